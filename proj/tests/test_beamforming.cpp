// SPDX-License-Identifier: Apache-2.0
//
// saasim: spherical and planar antenna-array beam simulator
// Copyright (C) 2026 The saasim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "saa/beamforming.hpp"
#include "saa/channel.hpp"
#include "saa/error.hpp"
#include "saa/geometry.hpp"
#include "test_support.hpp"

using namespace saa;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected saa::Error");
  return ErrorCode::IoError;
}

ChannelVector make_channel(std::vector<Complex> gains) {
  ChannelVector h;
  h.visible.resize(gains.size());
  for (std::size_t k = 0; k < gains.size(); ++k) h.visible[k] = gains[k] != Complex{};
  h.gains = std::move(gains);
  h.wavelength = 1.0;
  h.target = {1.0, 0.0, 0.0};
  return h;
}

double weight_norm2(const BeamWeights& w) {
  double s = 0;
  for (const auto& x : w.weights) s += std::norm(x);
  return s;
}

// Straight-line evaluation of |sum_k conj(h_k) g_k|^2 / |h|^2 with the channel
// recomputed from geometry, without the library's channel or weight code.
double direct_response(const ArrayGeometry& g, const SphericalPoint& focal, const SphericalPoint& probe, double lambda) {
  auto gains = [&](const SphericalPoint& p) {
    std::vector<std::complex<double>> out;
    const double st = std::sin(p.theta);
    const double tx = p.r * st * std::cos(p.phi), ty = p.r * st * std::sin(p.phi), tz = p.r * std::cos(p.theta);
    for (const auto& e : g.elements()) {
      const double dx = tx - e.position.x, dy = ty - e.position.y, dz = tz - e.position.z;
      if (e.normal.x * dx + e.normal.y * dy + e.normal.z * dz <= 0) {
        out.emplace_back(0.0, 0.0);
        continue;
      }
      const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
      out.push_back(lambda / (4 * kPi * d) * std::polar(1.0, -2 * kPi * d / lambda));
    }
    return out;
  };
  const auto h = gains(focal), p = gains(probe);
  std::complex<double> acc = 0;
  double hn = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    acc += std::conj(h[k]) * p[k];
    hn += std::norm(h[k]);
  }
  return std::norm(acc) / hn;
}

}  // namespace

TEST_CASE("conjugate weight examples") {
  const auto w1 = conjugate_weights(make_channel({{1, 0}}));
  REQUIRE(w1.weights.size() == 1);
  CHECK(w1.weights[0] == Complex{1, 0});

  const auto w2 = conjugate_weights(make_channel({{3, 4}, {0, 0}}));
  CHECK(w2.weights[0].real() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(w2.weights[0].imag() == doctest::Approx(-0.8).epsilon(1e-15));
  CHECK(w2.weights[1] == Complex{0, 0});
  CHECK(w2.focal.r == 1.0);

  CHECK(code_of([] { conjugate_weights(make_channel({{0, 0}, {0, 0}})); }) == ErrorCode::NoVisibleElements);

  const auto plate = upa(100, 0.005);
  const auto rear = los_channel(plate, {30, kPi, kPi / 3}, 0.01);
  CHECK(code_of([&] { conjugate_weights(rear); }) == ErrorCode::NoVisibleElements);
}

TEST_CASE("beam response basics") {
  const auto h = make_channel({{0.3, -0.1}, {0.0, 0.7}, {0, 0}});
  const auto w = conjugate_weights(h);
  CHECK(beam_response(w, h) == doctest::Approx(power(h)).epsilon(1e-14));

  const auto disjoint = make_channel({{0, 0}, {0, 0}, {2.0, 1.0}});
  CHECK(beam_response(w, disjoint) == 0.0);

  const auto shorter = make_channel({{1, 0}});
  CHECK(code_of([&] { beam_response(w, shorter); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("normalization examples") {
  const std::vector<double> raw{2, 1, 0};
  const auto p = normalize_pattern(raw, Normalization::grid_max());
  CHECK(p.linear == std::vector<double>{1, 0.5, 0});
  CHECK(p.db[0] == 0.0);
  CHECK(p.db[1] == doctest::Approx(-3.0103).epsilon(1e-5));
  CHECK(p.db[2] == kDbFloor);
  CHECK(p.reference == 2.0);

  const std::vector<double> one{5};
  CHECK(normalize_pattern(one, Normalization::focal_response(5)).linear == std::vector<double>{1});

  const std::vector<double> zeros{0, 0};
  CHECK(code_of([&] { normalize_pattern(zeros, Normalization::grid_max()); }) == ErrorCode::DegeneratePattern);
  CHECK(code_of([&] { normalize_pattern({}, Normalization::grid_max()); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { normalize_pattern(one, Normalization::focal_response(0)); }) == ErrorCode::InvalidArgument);
  const std::vector<double> negative{1, -1};
  CHECK(code_of([&] { normalize_pattern(negative, Normalization::grid_max()); }) == ErrorCode::InvalidArgument);

  CHECK(to_db(0.0) == kDbFloor);
  CHECK(to_db(1.0) == 0.0);
  CHECK(to_db(0.1) == doctest::Approx(-10.0));
}

TEST_CASE("weight and response properties on random scenes") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const double R = 0.1 + u01(rng);
    const double lambda = 0.003 + 0.02 * u01(rng);
    const auto g = golden_spiral_saa(20 + static_cast<std::size_t>(80 * u01(rng)), R);
    const SphericalPoint focal{R + 1 + 30 * u01(rng), kPi * u01(rng), 2 * kPi * u01(rng)};
    const auto h = los_channel(g, focal, lambda);
    const auto w = conjugate_weights(h);
    CHECK(std::abs(weight_norm2(w) - 1.0) <= 1e-12);
    CHECK(test::rel_diff(beam_response(w, h), power(h)) <= 1e-9);

    // Global phase and positive scale of the design channel leave responses unchanged.
    const Complex phase = std::polar(1.0, 2 * kPi * u01(rng));
    const double c = 0.01 + 100 * u01(rng);
    auto hp = h, hs = h;
    for (auto& x : hp.gains) x *= phase;
    for (auto& x : hs.gains) x *= c;
    const auto wp = conjugate_weights(hp), ws = conjugate_weights(hs);

    for (int q = 0; q < 20; ++q) {
      const SphericalPoint probe{R + 1 + 30 * u01(rng), kPi * u01(rng), 2 * kPi * u01(rng)};
      const auto hq = los_channel(g, probe, lambda);
      const double r = beam_response(w, hq);
      CHECK(r <= power(hq) * (1 + 1e-9));
      CHECK(test::rel_diff(beam_response(wp, hq), r) <= 1e-12);
      CHECK(test::rel_diff(beam_response(ws, hq), r) <= 1e-12);
    }
  }
}

TEST_CASE("focal-to-offset contrast baseline") {
  const auto g = golden_spiral_saa(100, 0.5);
  const SphericalPoint focal{30, kPi / 6, kPi / 6};
  const SphericalPoint offset{30, kPi / 6 + 10 * kPi / 180, kPi / 6};
  const auto w = conjugate_weights(los_channel(g, focal, 0.01));
  const double on = beam_response(w, los_channel(g, focal, 0.01));
  const double off = beam_response(w, los_channel(g, offset, 0.01));

  CHECK(test::rel_diff(on, direct_response(g, focal, focal, 0.01)) <= 1e-12);
  CHECK(test::rel_diff(off, direct_response(g, focal, offset, 0.01)) <= 1e-9);
  CHECK(on / off == doctest::Approx(24.502678487349279).epsilon(1e-9));
}
