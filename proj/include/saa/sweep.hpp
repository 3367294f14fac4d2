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
#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "saa/beamforming.hpp"
#include "saa/channel.hpp"
#include "saa/geometry.hpp"

namespace saa {

struct AngularSweepSpec {
  std::size_t theta_samples = 181;
  std::size_t phi_samples = 181;
  double theta_min = 0.0;
  double theta_max = std::numbers::pi;
  double phi_min = 0.0;
  double phi_max = 2.0 * std::numbers::pi;
  double eval_range = 30.0;

  void validate() const;
  friend bool operator==(const AngularSweepSpec&, const AngularSweepSpec&) = default;
};

struct DistanceSweepSpec {
  double r_min = 5.0;
  double r_max = 100.0;
  std::size_t samples = 960;

  friend bool operator==(const DistanceSweepSpec&, const DistanceSweepSpec&) = default;
};

struct SweepOptions {
  AmplitudeModel amplitude = AmplitudeModel::FreeSpace;
  Normalization::Mode normalization = Normalization::Mode::GridMax;
  unsigned threads = 0;  // 0 = all hardware threads
};

struct AngularPatternGrid {
  std::vector<double> theta_axis;
  std::vector<double> phi_axis;
  std::vector<double> power;            // row-major, theta outer
  std::optional<SphericalPoint> focal;  // empty for overlays
  double reference = 0.0;               // raw value mapped to 1
  double focal_gain = 0.0;              // ||h_focal||^2, unnormalized

  std::size_t rows() const noexcept { return theta_axis.size(); }
  std::size_t cols() const noexcept { return phi_axis.size(); }
  double at(std::size_t i, std::size_t j) const { return power[i * phi_axis.size() + j]; }
};

struct DistancePattern {
  std::vector<double> r_axis;
  std::vector<double> power;
  double theta = 0.0;
  double phi = 0.0;
  double focal_range = 0.0;
  double reference = 0.0;
  double focal_gain = 0.0;
};

struct OverlayResult {
  AngularPatternGrid overlay;
  std::vector<AngularPatternGrid> beams;
  std::vector<std::size_t> beam_focal_index;  // focal index of each entry in `beams`
  std::vector<std::size_t> skipped;           // focal indices whose weights could not be formed
};

// n uniform samples with both endpoints reproduced exactly.
std::vector<double> linspace(double lo, double hi, std::size_t n);

// Runs fn(i) for i in [0, count) on up to `threads` workers; each index is
// evaluated exactly once, so order-independent results are bitwise reproducible.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

// Raw beam_response of fixed weights at every probe.
std::vector<double> probe_responses(const ArrayGeometry& geometry, double wavelength, const BeamWeights& weights,
                                    std::span<const SphericalPoint> probes, const SweepOptions& options = {});

// Probe points of the angular grid in row-major order.
std::vector<SphericalPoint> angular_probes(const AngularSweepSpec& spec);

AngularPatternGrid angular_sweep(const ArrayGeometry& geometry, double wavelength, const SphericalPoint& focal,
                                 const AngularSweepSpec& spec = {}, const SweepOptions& options = {});

// Independently normalized beam per focal, combined by per-cell maximum.
// Throws AllBeamsInfeasible when no focal admits a beam.
OverlayResult multi_focal_overlay(const ArrayGeometry& geometry, double wavelength,
                                  std::span<const SphericalPoint> focals, const AngularSweepSpec& spec = {},
                                  const SweepOptions& options = {});

DistancePattern distance_sweep(const ArrayGeometry& geometry, double wavelength, const SphericalPoint& focal,
                               const DistanceSweepSpec& spec = {}, const SweepOptions& options = {});

// CSV `theta_rad,phi_rad,power_db`, theta outer.
void write_angular_csv(std::ostream& out, const AngularPatternGrid& grid);
// CSV `r_m,power_db`.
void write_distance_csv(std::ostream& out, const DistancePattern& pattern);

// Inverse of the writers above. dB values at or below the floor map to exact zero.
AngularPatternGrid read_angular_csv(std::istream& in);
DistancePattern read_distance_csv(std::istream& in);

}  // namespace saa
