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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "saa/channel.hpp"

namespace saa {

struct BeamWeights {
  std::vector<Complex> weights;  // unit norm
  SphericalPoint focal;
};

// Matched filter: conj(h) / ||h||. Throws NoVisibleElements for an all-zero channel.
BeamWeights conjugate_weights(const ChannelVector& h);

// |sum_k w_k h_k|^2 (w is already conjugated).
double beam_response(std::span<const Complex> weights, std::span<const Complex> gains);
double beam_response(const BeamWeights& w, const ChannelVector& probe);

// Value written for exact zeros in dB outputs.
inline constexpr double kDbFloor = -300.0;

double to_db(double linear_power);

struct Normalization {
  enum class Mode { GridMax, FocalResponse };
  Mode mode = Mode::GridMax;
  double value = 0.0;  // FocalResponse reference

  static Normalization grid_max() { return {Mode::GridMax, 0.0}; }
  static Normalization focal_response(double v) { return {Mode::FocalResponse, v}; }
};

std::string_view to_string(Normalization::Mode mode) noexcept;
std::optional<Normalization::Mode> parse_normalization_mode(std::string_view name) noexcept;

struct NormalizedPattern {
  std::vector<double> linear;
  std::vector<double> db;
  double reference = 0.0;
};

// Divides by the grid maximum or the supplied focal response.
NormalizedPattern normalize_pattern(std::span<const double> raw, Normalization mode);

}  // namespace saa
