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
#include "saa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>

#include "saa/error.hpp"
#include "saa/format.hpp"

namespace saa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_radius(double radius) {
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw Error(ErrorCode::InvalidRadius, "radius must be finite and > 0, got " + format_double(radius));
  }
}

void require_count(std::size_t n, const char* what) {
  if (n == 0) throw Error(ErrorCode::InvalidCount, std::string(what) + " must be >= 1");
}

Element radial_element(const Vec3& unit, double radius) { return {radius * unit, unit}; }

}  // namespace

Vec3 direction(double theta, double phi) {
  const double s = std::sin(theta);
  return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

Vec3 SphericalPoint::to_cartesian() const { return r * direction(theta, phi); }

SphericalPoint SphericalPoint::from_cartesian(const Vec3& p) {
  SphericalPoint out;
  out.r = norm(p);
  out.theta = std::atan2(std::hypot(p.x, p.y), p.z);
  out.phi = std::atan2(p.y, p.x);
  if (out.phi < 0.0) out.phi += kTwoPi;
  return out;
}

void validate(const SphericalPoint& p) {
  if (!(std::isfinite(p.r) && p.r > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "range must be finite and > 0, got " + format_double(p.r));
  }
  if (!(p.theta >= 0.0 && p.theta <= kPi)) {
    throw Error(ErrorCode::InvalidArgument, "theta must lie in [0, pi], got " + format_double(p.theta));
  }
  if (!(p.phi >= 0.0 && p.phi <= kTwoPi)) {
    throw Error(ErrorCode::InvalidArgument, "phi must lie in [0, 2pi], got " + format_double(p.phi));
  }
}

std::string_view to_string(ArrayKind kind) noexcept {
  switch (kind) {
    case ArrayKind::UPA: return "upa";
    case ArrayKind::SpiralSAA: return "spiral_saa";
    case ArrayKind::RingSAA: return "ring_saa";
    case ArrayKind::PolyhedralSAA: return "polyhedral_saa";
    case ArrayKind::SpiralCurveSAA: return "spiral_curve_saa";
  }
  return "unknown";
}

std::optional<ArrayKind> parse_array_kind(std::string_view name) noexcept {
  for (auto kind : {ArrayKind::UPA, ArrayKind::SpiralSAA, ArrayKind::RingSAA, ArrayKind::PolyhedralSAA,
                    ArrayKind::SpiralCurveSAA}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

bool is_spherical(ArrayKind kind) noexcept { return kind != ArrayKind::UPA; }

double golden_angle() noexcept { return kPi * (3.0 - std::sqrt(5.0)); }

ArrayGeometry golden_spiral_saa(std::size_t n, double radius) {
  require_count(n, "element count");
  require_radius(radius);

  const double nd = static_cast<double>(n);
  const double gamma = golden_angle();
  std::vector<Element> elements;
  elements.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    // 1 - (2k+1)/n written over an exact integer numerator, so z_k = -z_{n-1-k} holds bitwise.
    const double z = (nd - 2.0 * static_cast<double>(k) - 1.0) / nd;
    const double rho = std::sqrt(1.0 - z * z);
    const double phi = std::fmod(static_cast<double>(k) * gamma, kTwoPi);
    elements.push_back(radial_element({rho * std::cos(phi), rho * std::sin(phi), z}, radius));
  }
  return ArrayGeometry(ArrayKind::SpiralSAA, std::move(elements), radius, 0.0);
}

ArrayGeometry upa(std::size_t n, double spacing) {
  require_count(n, "element count");
  if (!(std::isfinite(spacing) && spacing > 0.0)) {
    throw Error(ErrorCode::InvalidSpacing, "spacing must be finite and > 0, got " + format_double(spacing));
  }
  std::size_t m = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  while (m * m > n) --m;
  while ((m + 1) * (m + 1) <= n) ++m;
  if (m * m != n) throw Error(ErrorCode::NotSquare, "n must be a perfect square, got " + std::to_string(n));

  const double center = (static_cast<double>(m) - 1.0) / 2.0;
  std::vector<Element> elements;
  elements.reserve(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const Vec3 pos{(static_cast<double>(i) - center) * spacing, (static_cast<double>(j) - center) * spacing, 0.0};
      elements.push_back({pos, {0.0, 0.0, 1.0}});
    }
  }
  return ArrayGeometry(ArrayKind::UPA, std::move(elements), 0.0, spacing);
}

std::vector<std::size_t> ring_counts(std::size_t n_rings, RingPolicy policy) {
  require_count(n_rings, "ring count");
  if (policy.mode == RingPolicy::Mode::Fixed) {
    require_count(policy.count, "per-ring count");
    return std::vector<std::size_t>(n_rings, policy.count);
  }
  std::vector<std::size_t> counts;
  counts.reserve(n_rings);
  const double nr = static_cast<double>(n_rings);
  for (std::size_t i = 0; i < n_rings; ++i) {
    const double theta = (static_cast<double>(i) + 0.5) * kPi / nr;
    const auto c = static_cast<std::size_t>(std::llround(2.0 * nr * std::sin(theta)));
    counts.push_back(std::max<std::size_t>(1, c));
  }
  return counts;
}

ArrayGeometry ring_saa(std::size_t n_rings, RingPolicy policy, double radius) {
  const auto counts = ring_counts(n_rings, policy);
  require_radius(radius);

  std::vector<Element> elements;
  const double nr = static_cast<double>(n_rings);
  for (std::size_t i = 0; i < n_rings; ++i) {
    const double theta = (static_cast<double>(i) + 0.5) * kPi / nr;
    for (std::size_t j = 0; j < counts[i]; ++j) {
      const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(counts[i]);
      elements.push_back(radial_element(direction(theta, phi), radius));
    }
  }
  return ArrayGeometry(ArrayKind::RingSAA, std::move(elements), radius, 0.0);
}

ArrayGeometry polyhedral_saa(std::size_t subdivision, double radius) {
  require_radius(radius);

  const double t = std::numbers::phi;
  std::vector<Vec3> verts = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
                             {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : verts) v = v / norm(v);

  using Face = std::array<std::size_t, 3>;
  std::vector<Face> faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
                             {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
                             {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};

  for (std::size_t round = 0; round < subdivision; ++round) {
    // Shared edges are identified by their sorted vertex-index pair.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> midpoints;
    auto midpoint = [&](std::size_t a, std::size_t b) {
      const auto key = std::minmax(a, b);
      if (auto it = midpoints.find(key); it != midpoints.end()) return it->second;
      const Vec3 m = verts[key.first] + verts[key.second];
      verts.push_back(m / norm(m));
      midpoints.emplace(key, verts.size() - 1);
      return verts.size() - 1;
    };
    std::vector<Face> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const auto ab = midpoint(f[0], f[1]);
      const auto bc = midpoint(f[1], f[2]);
      const auto ca = midpoint(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  std::vector<Element> elements;
  elements.reserve(verts.size());
  for (const auto& v : verts) elements.push_back(radial_element(v, radius));
  return ArrayGeometry(ArrayKind::PolyhedralSAA, std::move(elements), radius, 0.0);
}

ArrayGeometry spiral_curve_saa(std::size_t n, double turns, double radius) {
  require_count(n, "element count");
  if (!(std::isfinite(turns) && turns > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "turns must be finite and > 0, got " + format_double(turns));
  }
  require_radius(radius);

  std::vector<Element> elements;
  elements.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    const double theta = kPi * t;
    const double phi = std::fmod(kTwoPi * turns * t, kTwoPi);
    elements.push_back(radial_element(direction(theta, phi), radius));
  }
  return ArrayGeometry(ArrayKind::SpiralCurveSAA, std::move(elements), radius, 0.0);
}

void validate_rotation(const Mat3& rotation) {
  constexpr double tol = 1e-10;
  for (const auto& row : rotation) {
    for (double v : row) {
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidRotation, "rotation has non-finite entries");
    }
  }
  const Mat3 gram = transpose(rotation) * rotation;
  const Mat3 eye = identity_matrix();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (std::abs(gram[i][j] - eye[i][j]) > tol) throw Error(ErrorCode::InvalidRotation, "matrix is not orthogonal");
    }
  }
  if (std::abs(determinant(rotation) - 1.0) > tol) {
    throw Error(ErrorCode::InvalidRotation, "matrix is a reflection (det != +1)");
  }
}

ArrayGeometry rotate(const ArrayGeometry& geometry, const Mat3& rotation) {
  validate_rotation(rotation);
  if (rotation == identity_matrix()) return geometry;  // keeps signed zeros intact
  std::vector<Element> elements;
  elements.reserve(geometry.size());
  for (const auto& e : geometry.elements()) elements.push_back({rotation * e.position, rotation * e.normal});
  return ArrayGeometry(geometry.kind(), std::move(elements), geometry.radius(), geometry.spacing());
}

SphericalPoint rotate(const SphericalPoint& p, const Mat3& rotation) {
  validate_rotation(rotation);
  return SphericalPoint::from_cartesian(rotation * p.to_cartesian());
}

double min_pairwise_distance(const ArrayGeometry& geometry) {
  const auto& el = geometry.elements();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t j = i + 1; j < el.size(); ++j) best = std::min(best, norm(el[i].position - el[j].position));
  }
  return best;
}

void write_geometry_csv(std::ostream& out, const ArrayGeometry& geometry) {
  out << "index,x,y,z,nx,ny,nz\n";
  std::size_t index = 0;
  for (const auto& e : geometry.elements()) {
    out << index++ << ',' << format_double(e.position.x) << ',' << format_double(e.position.y) << ','
        << format_double(e.position.z) << ',' << format_double(e.normal.x) << ',' << format_double(e.normal.y) << ','
        << format_double(e.normal.z) << '\n';
  }
}

}  // namespace saa
