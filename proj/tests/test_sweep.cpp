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
#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "saa/beamforming.hpp"
#include "saa/channel.hpp"
#include "saa/error.hpp"
#include "saa/geometry.hpp"
#include "saa/sweep.hpp"

using namespace saa;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStep = kPi / 180;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected saa::Error");
  return ErrorCode::IoError;
}

std::pair<std::size_t, std::size_t> argmax(const AngularPatternGrid& g) {
  const auto it = std::max_element(g.power.begin(), g.power.end());
  const auto k = static_cast<std::size_t>(it - g.power.begin());
  return {k / g.cols(), k % g.cols()};
}

double great_circle(double t1, double p1, double t2, double p2) {
  return angle_between(direction(t1, p1), direction(t2, p2));
}

const std::vector<SphericalPoint>& eight_focals() {
  static const std::vector<SphericalPoint> f = {
      {30, kPi / 6, kPi / 6},         {30, kPi / 3, 5 * kPi / 6}, {30, kPi / 4, kPi / 3},
      {30, 2 * kPi / 3, 3 * kPi / 4}, {30, 3 * kPi / 4, kPi / 4}, {30, 5 * kPi / 6, 2 * kPi / 3},
      {30, 0, kPi / 3},               {30, kPi, kPi / 3}};
  return f;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("linspace and axis contract") {
  const auto ax = linspace(0.0, kPi, 181);
  REQUIRE(ax.size() == 181);
  CHECK(ax.front() == 0.0);
  CHECK(ax.back() == kPi);
  CHECK(ax[90] == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(code_of([] { linspace(0, 1, 1); }) == ErrorCode::InvalidArgument);

  const auto g = golden_spiral_saa(100, 0.5);
  const auto grid = angular_sweep(g, 0.01, {30, kPi / 6, kPi / 6});
  REQUIRE(grid.rows() == 181);
  REQUIRE(grid.cols() == 181);
  CHECK(grid.theta_axis.front() == 0.0);
  CHECK(grid.theta_axis.back() == kPi);
  CHECK(grid.phi_axis.front() == 0.0);
  CHECK(grid.phi_axis.back() == 2 * kPi);
  for (std::size_t i = 0; i < grid.rows(); ++i) CHECK(std::abs(grid.at(i, 0) - grid.at(i, 180)) <= 1e-12);
  CHECK(*std::max_element(grid.power.begin(), grid.power.end()) == 1.0);
  CHECK(*std::min_element(grid.power.begin(), grid.power.end()) >= 0.0);
}

TEST_CASE("angular spec validation") {
  AngularSweepSpec s;
  s.theta_samples = 1;
  CHECK(code_of([&] { s.validate(); }) == ErrorCode::InvalidArgument);
  s = {};
  s.theta_max = 4.0;
  CHECK(code_of([&] { s.validate(); }) == ErrorCode::InvalidArgument);
  s = {};
  s.phi_min = 1.0;
  s.phi_max = 0.5;
  CHECK(code_of([&] { s.validate(); }) == ErrorCode::InvalidArgument);
  s = {};
  s.eval_range = 0.0;
  CHECK(code_of([&] { s.validate(); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("SAA beam peaks at its focal direction") {
  const auto g = golden_spiral_saa(100, 0.5);
  const auto grid = angular_sweep(g, 0.01, {30, kPi / 6, kPi / 6});
  const auto [i, j] = argmax(grid);
  CHECK(great_circle(grid.theta_axis[i], grid.phi_axis[j], kPi / 6, kPi / 6) <= kStep + 1e-12);
  CHECK(grid.focal.has_value());
  CHECK(grid.focal_gain > 0.0);
  CHECK(grid.reference > 0.0);
}

TEST_CASE("UPA beam and rear hemisphere") {
  const auto g = upa(100, 0.005);
  const auto grid = angular_sweep(g, 0.01, {30, kPi / 3, kPi / 3});
  const auto [i, j] = argmax(grid);
  CHECK(great_circle(grid.theta_axis[i], grid.phi_axis[j], kPi / 3, kPi / 3) <= kStep + 1e-12);
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    if (!(grid.theta_axis[r] > kPi / 2)) continue;
    for (std::size_t c = 0; c < grid.cols(); ++c) CHECK(grid.at(r, c) == 0.0);
  }
  CHECK(code_of([&] { angular_sweep(g, 0.01, {30, 3 * kPi / 4, kPi / 4}); }) == ErrorCode::NoVisibleElements);
}

TEST_CASE("single element has no directivity") {
  const auto g = golden_spiral_saa(1, 0.5);
  AngularSweepSpec spec;
  spec.theta_samples = 37;
  spec.phi_samples = 73;
  const auto grid = angular_sweep(g, 0.01, {30, kPi / 2, 0.0}, spec, {AmplitudeModel::Unit});
  CHECK(*std::max_element(grid.power.begin(), grid.power.end()) == 1.0);
  const Element& e = g.elements()[0];
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < grid.cols(); ++c) {
      const Vec3 t = SphericalPoint{30, grid.theta_axis[r], grid.phi_axis[c]}.to_cartesian();
      if (element_visible(e, t))
        CHECK(grid.at(r, c) == doctest::Approx(1.0).epsilon(1e-12));
      else
        CHECK(grid.at(r, c) == 0.0);
    }
  }
}

TEST_CASE("multi-focal overlay") {
  AngularSweepSpec spec;
  spec.theta_samples = 61;
  spec.phi_samples = 61;

  SUBCASE("UPA skips the rear-hemisphere focals") {
    const auto r = multi_focal_overlay(upa(100, 0.005), 0.01, eight_focals(), spec);
    CHECK(r.skipped == std::vector<std::size_t>{3, 4, 5, 7});
    CHECK(r.beam_focal_index == std::vector<std::size_t>{0, 1, 2, 6});
    REQUIRE(r.beams.size() == 4);
    for (const auto& b : r.beams)
      for (std::size_t k = 0; k < b.power.size(); ++k) CHECK(r.overlay.power[k] >= b.power[k]);
    CHECK_FALSE(r.overlay.focal.has_value());
  }
  SUBCASE("SAA keeps all eight") {
    const auto r = multi_focal_overlay(golden_spiral_saa(100, 0.5), 0.01, eight_focals(), spec);
    CHECK(r.skipped.empty());
    CHECK(r.beams.size() == 8);
    for (std::size_t k = 0; k < r.overlay.power.size(); ++k) {
      double m = 0;
      for (const auto& b : r.beams) m = std::max(m, b.power[k]);
      CHECK(r.overlay.power[k] == m);
    }
  }
  SUBCASE("single focal equals the beam") {
    const auto g = golden_spiral_saa(100, 0.5);
    const std::vector<SphericalPoint> one{{30, kPi / 4, kPi / 3}};
    const auto r = multi_focal_overlay(g, 0.01, one, spec);
    const auto b = angular_sweep(g, 0.01, one[0], spec);
    CHECK(bitwise_equal(r.overlay.power, b.power));
  }
  SUBCASE("errors") {
    const std::vector<SphericalPoint> rear{{30, 3 * kPi / 4, 0.0}, {30, kPi, 0.0}};
    CHECK(code_of([&] { multi_focal_overlay(upa(4, 0.005), 0.01, rear, spec); }) == ErrorCode::AllBeamsInfeasible);
    CHECK(code_of([&] { multi_focal_overlay(upa(4, 0.005), 0.01, {}, spec); }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("thread count does not change results") {
  const auto g = golden_spiral_saa(100, 0.5);
  AngularSweepSpec spec;
  spec.theta_samples = 45;
  spec.phi_samples = 91;
  const SphericalPoint f{30, 2.0, 4.0};
  const auto one = angular_sweep(g, 0.01, f, spec, {AmplitudeModel::FreeSpace, Normalization::Mode::GridMax, 1});
  for (unsigned t : {2u, 3u, 8u, 0u}) {
    const auto many = angular_sweep(g, 0.01, f, spec, {AmplitudeModel::FreeSpace, Normalization::Mode::GridMax, t});
    CHECK(bitwise_equal(one.power, many.power));
  }
}

TEST_CASE("parallel_for propagates exceptions") {
  CHECK_THROWS_AS(parallel_for(100, 4,
                               [](std::size_t i) {
                                 if (i == 57) throw Error(ErrorCode::InvalidArgument, "boom");
                               }),
                  Error);
}

TEST_CASE("focal-response normalization") {
  const auto g = golden_spiral_saa(100, 0.5);
  AngularSweepSpec spec;
  spec.theta_samples = 31;
  spec.phi_samples = 31;
  const SphericalPoint f{30, kPi / 2, kPi};
  const auto grid = angular_sweep(g, 0.01, f, spec, {AmplitudeModel::FreeSpace, Normalization::Mode::FocalResponse});
  CHECK(grid.reference == doctest::Approx(grid.focal_gain).epsilon(1e-12));
  // theta = pi/2, phi = pi is a grid cell and the matched-filter point.
  CHECK(grid.at(15, 15) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("distance sweep") {
  const auto g = golden_spiral_saa(100, 2.0);
  const SphericalPoint f{30, kPi / 4, kPi / 4};
  DistanceSweepSpec spec;
  const auto p = distance_sweep(g, 0.01, f, spec, {AmplitudeModel::Unit});
  REQUIRE(p.r_axis.size() == 960);
  CHECK(p.r_axis.front() == 5.0);
  CHECK(p.r_axis.back() == 100.0);
  CHECK(p.theta == f.theta);
  CHECK(p.focal_range == 30.0);
  const auto k = static_cast<std::size_t>(std::max_element(p.power.begin(), p.power.end()) - p.power.begin());
  CHECK(std::abs(p.r_axis[k] - 30.0) <= 95.0 / 959 + 1e-12);

  DistanceSweepSpec bad = spec;
  bad.r_min = 1.0;
  CHECK(code_of([&] { distance_sweep(g, 0.01, f, bad); }) == ErrorCode::TargetInsideArray);
  bad = spec;
  bad.samples = 1;
  CHECK(code_of([&] { distance_sweep(g, 0.01, f, bad); }) == ErrorCode::InvalidArgument);
  bad = spec;
  bad.r_max = 20.0;
  CHECK(code_of([&] { distance_sweep(g, 0.01, f, bad); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("pattern CSV round trip") {
  const auto g = golden_spiral_saa(30, 0.5);
  AngularSweepSpec spec;
  spec.theta_samples = 7;
  spec.phi_samples = 9;
  const auto grid = angular_sweep(g, 0.01, {30, 1.0, 1.0}, spec);
  std::stringstream ss;
  write_angular_csv(ss, grid);
  const std::string text = ss.str();
  CHECK(text.rfind("theta_rad,phi_rad,power_db\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  const auto back = read_angular_csv(ss);
  REQUIRE(back.rows() == 7);
  REQUIRE(back.cols() == 9);
  CHECK(bitwise_equal(back.theta_axis, grid.theta_axis));
  CHECK(bitwise_equal(back.phi_axis, grid.phi_axis));
  for (std::size_t k = 0; k < grid.power.size(); ++k) {
    if (grid.power[k] == 0.0)
      CHECK(back.power[k] == 0.0);
    else
      CHECK(back.power[k] == doctest::Approx(grid.power[k]).epsilon(1e-13));
  }

  const auto p = distance_sweep(g, 0.01, {30, 1.0, 1.0}, {5, 100, 20});
  std::stringstream ds;
  write_distance_csv(ds, p);
  CHECK(ds.str().rfind("r_m,power_db\n", 0) == 0);
  const auto dback = read_distance_csv(ds);
  CHECK(bitwise_equal(dback.r_axis, p.r_axis));

  std::stringstream junk("r_m,power_db\n1,abc\n");
  CHECK(code_of([&] { read_distance_csv(junk); }) == ErrorCode::ParseError);
  std::stringstream wrong("a,b\n");
  CHECK(code_of([&] { read_angular_csv(wrong); }) == ErrorCode::ParseError);
}
