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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "saa/beamforming.hpp"
#include "saa/channel.hpp"
#include "saa/geometry.hpp"
#include "saa/metrics.hpp"
#include "saa/sweep.hpp"

namespace saa {

struct GeometrySpec {
  ArrayKind kind = ArrayKind::SpiralSAA;
  std::size_t n = 0;            // spiral_saa, upa, spiral_curve_saa
  double radius = 0.0;          // SAA kinds
  double spacing = 0.0;         // upa
  std::size_t rings = 0;        // ring_saa
  RingPolicy ring_policy;       // ring_saa
  std::size_t subdivision = 0;  // polyhedral_saa
  double turns = 0.0;           // spiral_curve_saa

  friend bool operator==(const GeometrySpec& a, const GeometrySpec& b) {
    return a.kind == b.kind && a.n == b.n && a.radius == b.radius && a.spacing == b.spacing && a.rings == b.rings &&
           a.ring_policy.mode == b.ring_policy.mode && a.ring_policy.count == b.ring_policy.count &&
           a.subdivision == b.subdivision && a.turns == b.turns;
  }
};

ArrayGeometry build_geometry(const GeometrySpec& spec);

enum class SweepMode { Angle, Distance, Both };

std::string_view to_string(SweepMode mode) noexcept;

struct Scenario {
  std::string name;
  GeometrySpec geometry;
  double wavelength = 0.0;
  std::vector<SphericalPoint> focals;
  SweepMode mode = SweepMode::Angle;
  AngularSweepSpec angular;
  DistanceSweepSpec distance;
  Normalization::Mode normalization = Normalization::Mode::GridMax;
  AmplitudeModel amplitude = AmplitudeModel::FreeSpace;
  std::string output_dir;

  bool has_angle() const { return mode != SweepMode::Distance; }
  bool has_distance() const { return mode != SweepMode::Angle; }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Parses `key = value` lines ('#' starts a comment). Unknown, duplicate, or
// kind-irrelevant keys are rejected. Throws ParseError (with line number) for
// malformed text and ValidationError (naming the field) for bad values.
//
// Numbers accept plain decimals and the forms `pi`, `pi/b`, `a*pi`, `a*pi/b`.
// `focal = r theta phi` may repeat; angles are in radians.
Scenario parse_scenario(std::string_view text);

// Geometry keys only (kind plus its parameters), same syntax and checks.
GeometrySpec parse_geometry(std::string_view text);

// `r theta phi`, whitespace or comma separated.
SphericalPoint parse_focal_point(std::string_view text);

// Canonical text form; parse_scenario(emit_scenario(s)) == s.
std::string emit_scenario(const Scenario& s);

std::vector<std::string> preset_names();
std::string preset_text(std::string_view name);
Scenario load_preset(std::string_view name);

struct RunReport {
  int exit_code = 0;  // 0 success, 2 some beams skipped, 1 hard error
  std::string message;
  std::vector<std::filesystem::path> files;
  std::vector<std::size_t> skipped;
  std::vector<BeamMetrics> beam_metrics;
  std::vector<FocusMetrics> focus_metrics;
  std::optional<IsotropyReport> isotropy;
};

// Runs every sweep the scenario asks for and writes the result files into
// s.output_dir. `threads` caps sweep concurrency (0 = all hardware threads).
RunReport run_scenario(const Scenario& s, unsigned threads = 0);

}  // namespace saa
