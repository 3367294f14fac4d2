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
#include "saa/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "saa/error.hpp"
#include "saa/format.hpp"

namespace saa {

std::string_view to_string(AmplitudeModel model) noexcept {
  switch (model) {
    case AmplitudeModel::FreeSpace: return "free_space";
    case AmplitudeModel::Unit: return "unit";
  }
  return "unknown";
}

std::optional<AmplitudeModel> parse_amplitude_model(std::string_view name) noexcept {
  if (name == "free_space") return AmplitudeModel::FreeSpace;
  if (name == "unit") return AmplitudeModel::Unit;
  return std::nullopt;
}

bool element_visible(const Element& element, const Vec3& target) {
  const Vec3 ray = target - element.position;
  if (ray.x == 0.0 && ray.y == 0.0 && ray.z == 0.0) {
    throw Error(ErrorCode::DegenerateGeometry, "target coincides with an element position");
  }
  // Sign of n . (t - p) equals the sign of n . unit(t - p).
  return dot(element.normal, ray) > 0.0;
}

Complex los_gain(double distance, double wavelength, AmplitudeModel model) {
  const double amplitude =
      model == AmplitudeModel::FreeSpace ? wavelength / (4.0 * std::numbers::pi * distance) : 1.0;
  const double phase = 2.0 * std::numbers::pi * distance / wavelength;
  return {amplitude * std::cos(phase), -amplitude * std::sin(phase)};
}

ChannelVector los_channel(const ArrayGeometry& geometry, const SphericalPoint& target, double wavelength,
                          AmplitudeModel model) {
  if (!(std::isfinite(wavelength) && wavelength > 0.0)) {
    throw Error(ErrorCode::InvalidWavelength, "wavelength must be finite and > 0, got " + format_double(wavelength));
  }
  validate(target);
  if (is_spherical(geometry.kind()) && !(target.r > geometry.radius())) {
    throw Error(ErrorCode::TargetInsideArray, "target range " + format_double(target.r) +
                                                  " m does not exceed array radius " +
                                                  format_double(geometry.radius()) + " m");
  }

  const Vec3 t = target.to_cartesian();
  ChannelVector h;
  h.wavelength = wavelength;
  h.target = target;
  h.gains.assign(geometry.size(), Complex(0.0, 0.0));
  h.visible.assign(geometry.size(), false);

  const auto& elements = geometry.elements();
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (!element_visible(elements[k], t)) continue;
    h.visible[k] = true;
    h.gains[k] = los_gain(norm(t - elements[k].position), wavelength, model);
  }
  return h;
}

std::size_t visible_count(const ChannelVector& h) {
  return static_cast<std::size_t>(std::count(h.visible.begin(), h.visible.end(), true));
}

double power(const ChannelVector& h) {
  double sum = 0.0;
  for (const auto& g : h.gains) sum += abs2(g);
  return sum;
}

}  // namespace saa
