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
#include <optional>
#include <string_view>
#include <vector>

#include "saa/vec3.hpp"

namespace saa {

// Target or probe location. theta is the polar angle from +z, phi the azimuth
// from +x towards +y.
struct SphericalPoint {
  double r = 1.0;
  double theta = 0.0;
  double phi = 0.0;

  Vec3 to_cartesian() const;
  static SphericalPoint from_cartesian(const Vec3& p);

  friend bool operator==(const SphericalPoint&, const SphericalPoint&) = default;
};

// Throws InvalidArgument unless r > 0, theta in [0, pi], phi in [0, 2pi].
void validate(const SphericalPoint& p);

// Unit direction for (theta, phi).
Vec3 direction(double theta, double phi);

struct Element {
  Vec3 position;
  Vec3 normal;

  friend bool operator==(const Element&, const Element&) = default;
};

enum class ArrayKind { UPA, SpiralSAA, RingSAA, PolyhedralSAA, SpiralCurveSAA };

std::string_view to_string(ArrayKind kind) noexcept;
std::optional<ArrayKind> parse_array_kind(std::string_view name) noexcept;
bool is_spherical(ArrayKind kind) noexcept;

struct RingPolicy {
  enum class Mode { Proportional, Fixed };
  Mode mode = Mode::Proportional;
  std::size_t count = 0;  // used by Fixed only

  static RingPolicy proportional() { return {Mode::Proportional, 0}; }
  static RingPolicy fixed(std::size_t n) { return {Mode::Fixed, n}; }
};

// Immutable ordered element set. Built only through the constructors below.
class ArrayGeometry {
 public:
  ArrayKind kind() const noexcept { return kind_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  // Sphere radius for SAA kinds, 0 for the UPA.
  double radius() const noexcept { return radius_; }
  // Lattice pitch for the UPA, 0 for SAA kinds.
  double spacing() const noexcept { return spacing_; }

  friend bool operator==(const ArrayGeometry&, const ArrayGeometry&) = default;

 private:
  ArrayGeometry(ArrayKind kind, std::vector<Element> elements, double radius, double spacing)
      : kind_(kind), elements_(std::move(elements)), radius_(radius), spacing_(spacing) {}

  ArrayKind kind_;
  std::vector<Element> elements_;
  double radius_;
  double spacing_;

  friend ArrayGeometry golden_spiral_saa(std::size_t n, double radius);
  friend ArrayGeometry upa(std::size_t n, double spacing);
  friend ArrayGeometry ring_saa(std::size_t n_rings, RingPolicy policy, double radius);
  friend ArrayGeometry polyhedral_saa(std::size_t subdivision, double radius);
  friend ArrayGeometry spiral_curve_saa(std::size_t n, double turns, double radius);
  friend ArrayGeometry rotate(const ArrayGeometry& geometry, const Mat3& rotation);
};

// Golden angle pi * (3 - sqrt 5).
double golden_angle() noexcept;

// Fibonacci lattice on the sphere: z_k = 1 - (2k+1)/n, phi_k = k * golden angle.
ArrayGeometry golden_spiral_saa(std::size_t n, double radius);

// Centered sqrt(n) x sqrt(n) lattice on the xy-plane, boresight +z, row-major.
ArrayGeometry upa(std::size_t n, double spacing);

// Parallel rings at theta_i = (i + 1/2) pi / n_rings, equal azimuth spacing from phi = 0.
ArrayGeometry ring_saa(std::size_t n_rings, RingPolicy policy, double radius);

// Number of elements per ring under `policy`.
std::vector<std::size_t> ring_counts(std::size_t n_rings, RingPolicy policy);

// Icosahedron refined by `subdivision` rounds of edge-midpoint splitting, every
// vertex projected to the sphere. 10 * 4^s + 2 elements.
ArrayGeometry polyhedral_saa(std::size_t subdivision, double radius);

// Elements at t_k = (k + 1/2)/n along theta = pi t, phi = 2 pi turns t.
ArrayGeometry spiral_curve_saa(std::size_t n, double turns, double radius);

// Applies a proper rotation to every position and normal.
ArrayGeometry rotate(const ArrayGeometry& geometry, const Mat3& rotation);

// Throws InvalidRotation unless R^T R = I and det R = +1 within 1e-10.
void validate_rotation(const Mat3& rotation);

SphericalPoint rotate(const SphericalPoint& p, const Mat3& rotation);

double min_pairwise_distance(const ArrayGeometry& geometry);

// CSV with header `index,x,y,z,nx,ny,nz`.
void write_geometry_csv(std::ostream& out, const ArrayGeometry& geometry);

}  // namespace saa
