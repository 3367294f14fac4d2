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
#include "saa/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "saa/error.hpp"
#include "saa/format.hpp"

namespace saa {

BeamWeights conjugate_weights(const ChannelVector& h) {
  const double norm = std::sqrt(power(h));
  if (!(norm > 0.0)) throw Error(ErrorCode::NoVisibleElements, "no element has line of sight to the focal point");
  BeamWeights w;
  w.focal = h.target;
  w.weights.reserve(h.gains.size());
  for (const auto& g : h.gains) w.weights.emplace_back(g.real() / norm, -g.imag() / norm);
  return w;
}

double beam_response(std::span<const Complex> weights, std::span<const Complex> gains) {
  if (weights.size() != gains.size()) {
    throw Error(ErrorCode::DimensionMismatch, "weights have " + std::to_string(weights.size()) +
                                                  " entries, probe channel has " + std::to_string(gains.size()));
  }
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double a = weights[k].real();
    const double b = weights[k].imag();
    const double c = gains[k].real();
    const double d = gains[k].imag();
    re += a * c - b * d;
    im += a * d + b * c;
  }
  return re * re + im * im;
}

double beam_response(const BeamWeights& w, const ChannelVector& probe) { return beam_response(w.weights, probe.gains); }

double to_db(double linear_power) { return linear_power > 0.0 ? 10.0 * std::log10(linear_power) : kDbFloor; }

std::string_view to_string(Normalization::Mode mode) noexcept {
  return mode == Normalization::Mode::GridMax ? "grid_max" : "focal_response";
}

std::optional<Normalization::Mode> parse_normalization_mode(std::string_view name) noexcept {
  if (name == "grid_max") return Normalization::Mode::GridMax;
  if (name == "focal_response") return Normalization::Mode::FocalResponse;
  return std::nullopt;
}

NormalizedPattern normalize_pattern(std::span<const double> raw, Normalization mode) {
  if (raw.empty()) throw Error(ErrorCode::InvalidArgument, "cannot normalize an empty pattern");
  for (double v : raw) {
    if (!(v >= 0.0 && std::isfinite(v))) {
      throw Error(ErrorCode::InvalidArgument, "pattern entries must be finite and >= 0, got " + format_double(v));
    }
  }

  double reference = 0.0;
  if (mode.mode == Normalization::Mode::GridMax) {
    reference = *std::max_element(raw.begin(), raw.end());
    if (reference == 0.0) throw Error(ErrorCode::DegeneratePattern, "pattern is identically zero");
  } else {
    reference = mode.value;
    if (!(reference > 0.0 && std::isfinite(reference))) {
      throw Error(ErrorCode::InvalidArgument, "normalization reference must be > 0, got " + format_double(reference));
    }
  }

  NormalizedPattern out;
  out.reference = reference;
  out.linear.reserve(raw.size());
  out.db.reserve(raw.size());
  for (double v : raw) {
    out.linear.push_back(v / reference);
    out.db.push_back(to_db(out.linear.back()));
  }
  return out;
}

}  // namespace saa
