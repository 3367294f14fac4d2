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
#include <numbers>
#include <random>

#include "doctest.h"
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

// Phase difference folded into (-pi, pi].
double wrap(double a) { return std::remainder(a, 2 * kPi); }

}  // namespace

TEST_CASE("visibility predicate") {
  const Element front{{0.5, 0, 0}, {1, 0, 0}};
  const Element back{{-0.5, 0, 0}, {-1, 0, 0}};
  CHECK(element_visible(front, {30, 0, 0}));
  CHECK_FALSE(element_visible(back, {30, 0, 0}));

  const Element plate{{0, 0, 0}, {0, 0, 1}};
  CHECK_FALSE(element_visible(plate, SphericalPoint{30, 3 * kPi / 4, 0.3}.to_cartesian()));
  CHECK(element_visible(plate, SphericalPoint{30, kPi / 4, 0.3}.to_cartesian()));
  // Tangential direction is excluded.
  CHECK_FALSE(element_visible(plate, {1, 0, 0}));
  CHECK(code_of([&] { element_visible(front, front.position); }) == ErrorCode::DegenerateGeometry);
}

TEST_CASE("line-of-sight gain examples") {
  const double lambda = 0.01;
  const Complex g1 = los_gain(lambda, lambda);
  CHECK(g1.real() == doctest::Approx(1 / (4 * kPi)).epsilon(1e-14));
  CHECK(std::abs(g1.imag()) < 1e-15);
  const Complex g2 = los_gain(lambda / 2, lambda);
  CHECK(g2.real() == doctest::Approx(-1 / (2 * kPi)).epsilon(1e-14));
  CHECK(std::abs(g2.imag()) < 1e-15);

  const Complex u = los_gain(0.37, lambda, AmplitudeModel::Unit);
  CHECK(std::abs(u) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("amplitude model names") {
  CHECK(to_string(AmplitudeModel::FreeSpace) == "free_space");
  CHECK(to_string(AmplitudeModel::Unit) == "unit");
  CHECK(parse_amplitude_model("unit") == AmplitudeModel::Unit);
  CHECK_FALSE(parse_amplitude_model("1/d").has_value());
}

TEST_CASE("visible count matches a brute-force scan") {
  const auto g = golden_spiral_saa(100, 0.5);
  const SphericalPoint target{30, kPi / 6, kPi / 6};
  const auto h = los_channel(g, target, 0.01);

  const Vec3 t = target.to_cartesian();
  std::size_t brute = 0;
  for (const auto& e : g.elements()) {
    const Vec3 d = t - e.position;
    if (e.normal.x * d.x + e.normal.y * d.y + e.normal.z * d.z > 0) ++brute;
  }
  CHECK(visible_count(h) == brute);
  CHECK(visible_count(h) == 50);  // regression baseline
}

TEST_CASE("magnitude, phase, and masking laws") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double R = 0.2 + u01(rng);
    const double lambda = 0.002 + 0.02 * u01(rng);
    const auto g = golden_spiral_saa(64, R);
    const SphericalPoint target{R + 0.5 + 40 * u01(rng), kPi * u01(rng), 2 * kPi * u01(rng)};
    const auto h = los_channel(g, target, lambda);
    REQUIRE(h.gains.size() == g.size());
    REQUIRE(h.visible.size() == g.size());
    const Vec3 t = target.to_cartesian();
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double d = norm(t - g.elements()[k].position);
      if (!h.visible[k]) {
        CHECK(h.gains[k] == Complex{0.0, 0.0});
        continue;
      }
      CHECK(h.gains[k] != Complex{0.0, 0.0});
      CHECK(test::rel_diff(std::abs(h.gains[k]) * d, lambda / (4 * kPi)) <= 1e-12);
      CHECK(std::abs(wrap(std::arg(h.gains[k]) + 2 * kPi * d / lambda)) <= 1e-9);
    }
  }
}

TEST_CASE("channel is covariant under rotation") {
  std::mt19937_64 rng(11);
  const auto g = golden_spiral_saa(100, 0.5);
  const SphericalPoint target{30, 1.1, 4.0};
  const auto h = los_channel(g, target, 0.01);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat3 q = test::random_rotation(rng);
    const auto hr = los_channel(rotate(g, q), rotate(target, q), 0.01);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double scale = std::max(std::abs(h.gains[k]), 1e-300);
      if (h.visible[k] != hr.visible[k]) {
        // Only elements that are numerically tangential may flip.
        CHECK(std::abs(dot(g.elements()[k].normal, target.to_cartesian() - g.elements()[k].position)) < 1e-9);
        continue;
      }
      CHECK(std::abs(h.gains[k] - hr.gains[k]) / scale <= 1e-9);
    }
  }
}

TEST_CASE("UPA hemisphere rule") {
  const auto g = upa(100, 0.005);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double phi = 2 * kPi * u01(rng);
    const auto rear = los_channel(g, {30, kPi / 2 + 1e-3 + (kPi / 2 - 2e-3) * u01(rng), phi}, 0.01);
    CHECK(visible_count(rear) == 0);
    CHECK(power(rear) == 0.0);
    const auto front = los_channel(g, {30, (kPi / 2 - 1e-3) * u01(rng), phi}, 0.01);
    CHECK(visible_count(front) == 100);
  }
}

TEST_CASE("channel errors") {
  const auto g = golden_spiral_saa(10, 0.5);
  CHECK(code_of([&] { los_channel(g, {30, 1, 1}, 0.0); }) == ErrorCode::InvalidWavelength);
  CHECK(code_of([&] { los_channel(g, {30, 1, 1}, -0.01); }) == ErrorCode::InvalidWavelength);
  CHECK(code_of([&] { los_channel(g, {0.5, 1, 1}, 0.01); }) == ErrorCode::TargetInsideArray);
  CHECK(code_of([&] { los_channel(g, {0.2, 1, 1}, 0.01); }) == ErrorCode::TargetInsideArray);

  const auto plate = upa(1, 0.005);
  CHECK(code_of([&] { los_channel(plate, {0.0, 0.0, 0.0}, 0.01); }) == ErrorCode::InvalidArgument);
}
