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

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include "saa/geometry.hpp"

namespace saa {

using Complex = std::complex<double>;

// |z|^2 as re^2 + im^2, independent of how std::norm is implemented.
inline double abs2(const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); }

// Per-element amplitude law. FreeSpace is lambda / (4 pi d); Unit keeps only the
// spherical-wavefront phase.
enum class AmplitudeModel { FreeSpace, Unit };

std::string_view to_string(AmplitudeModel model) noexcept;
std::optional<AmplitudeModel> parse_amplitude_model(std::string_view name) noexcept;

struct ChannelVector {
  std::vector<Complex> gains;
  std::vector<bool> visible;
  double wavelength = 0.0;
  SphericalPoint target;
};

// True iff the element normal points strictly towards the target. For a UPA
// element this is exactly target.z > 0.
bool element_visible(const Element& element, const Vec3& target);

// LoS gain of one visible element at distance d: amplitude(d) * exp(-i 2 pi d / lambda).
Complex los_gain(double distance, double wavelength, AmplitudeModel model = AmplitudeModel::FreeSpace);

ChannelVector los_channel(const ArrayGeometry& geometry, const SphericalPoint& target, double wavelength,
                          AmplitudeModel model = AmplitudeModel::FreeSpace);

std::size_t visible_count(const ChannelVector& h);

// Squared Euclidean norm of the gains.
double power(const ChannelVector& h);

}  // namespace saa
