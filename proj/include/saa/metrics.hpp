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
#include <iosfwd>
#include <span>

#include "saa/geometry.hpp"
#include "saa/sweep.hpp"

namespace saa {

struct BeamMetrics {
  double focal_theta = 0.0;
  double focal_phi = 0.0;
  std::size_t peak_row = 0;
  std::size_t peak_col = 0;
  double peak_theta = 0.0;
  double peak_phi = 0.0;
  double pointing_error = 0.0;  // great-circle angle, rad
  double hpbw_theta = 0.0;      // rad
  double hpbw_phi = 0.0;        // rad of azimuth; great-circle rad when the peak sits on a pole
  double peak_sidelobe_db = kDbFloor;
  bool one_sided = false;  // a -3 dB crossing ran into the grid edge
  bool degenerate = false;
};

struct FocusMetrics {
  std::size_t peak_index = 0;
  double peak_r = 0.0;
  double lower_r = 0.0;  // -3 dB crossing below the peak (window edge when one-sided)
  double upper_r = 0.0;
  double depth_of_focus = 0.0;
  double focal_error = 0.0;
  bool one_sided = false;
};

struct IsotropyReport {
  std::size_t beams = 0;  // non-degenerate entries used
  double hpbw_theta_min = 0.0;
  double hpbw_theta_max = 0.0;
  double hpbw_theta_ratio = 1.0;
  double hpbw_phi_min = 0.0;
  double hpbw_phi_max = 0.0;
  double hpbw_phi_ratio = 1.0;
  double sidelobe_min_db = kDbFloor;
  double sidelobe_max_db = kDbFloor;
  double sidelobe_ratio = 1.0;  // linear power ratio max / min
};

// Throws DegeneratePattern for an all-zero or flat grid.
BeamMetrics angular_metrics(const AngularPatternGrid& grid, const SphericalPoint& focal);

// Throws DegeneratePattern for an all-zero or flat pattern.
FocusMetrics focus_metrics(const DistancePattern& pattern);

// Needs at least two entries; throws DegeneratePattern if all are degenerate.
IsotropyReport isotropy_report(std::span<const BeamMetrics> metrics);

void write_metrics_csv_header(std::ostream& out);
void write_metrics_csv_row(std::ostream& out, const BeamMetrics& m);

}  // namespace saa
