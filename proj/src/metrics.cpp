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
#include "saa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "saa/error.hpp"
#include "saa/format.hpp"

namespace saa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAxisTol = 1e-9;
constexpr double kHalfPower = 0.5;

// Values sampled along a line or closed ring of grid cells with uniform spacing.
struct Cut {
  std::vector<double> values;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  double step = 0.0;
  bool periodic = false;
  std::size_t peak = 0;

  double at(std::ptrdiff_t pos) const {
    const auto n = static_cast<std::ptrdiff_t>(values.size());
    return values[static_cast<std::size_t>(((pos % n) + n) % n)];
  }
  const std::pair<std::size_t, std::size_t>& cell(std::ptrdiff_t pos) const {
    const auto n = static_cast<std::ptrdiff_t>(values.size());
    return cells[static_cast<std::size_t>(((pos % n) + n) % n)];
  }
  // Steps available from the peak in direction dir before the edge (or half the ring).
  std::size_t reach(int dir) const {
    if (periodic) return values.size() / 2;
    return dir > 0 ? values.size() - 1 - peak : peak;
  }
};

struct Side {
  double crossing = 0.0;  // positions from the peak to the -3 dB point
  std::size_t lobe = 0;   // positions from the peak to the first local minimum
  bool truncated = false;
};

Side walk(const Cut& cut, int dir) {
  const auto peak = static_cast<std::ptrdiff_t>(cut.peak);
  const double threshold = kHalfPower * cut.values[cut.peak];
  const std::size_t reach = cut.reach(dir);
  Side side;

  bool crossed = false;
  for (std::size_t s = 0; s < reach; ++s) {
    const double here = cut.at(peak + dir * static_cast<std::ptrdiff_t>(s));
    const double next = cut.at(peak + dir * static_cast<std::ptrdiff_t>(s + 1));
    if (next < threshold) {
      side.crossing = static_cast<double>(s) + (here - threshold) / (here - next);
      crossed = true;
      break;
    }
  }
  if (!crossed) {
    side.crossing = static_cast<double>(reach);
    side.truncated = true;
  }

  side.lobe = reach;
  for (std::size_t s = 0; s < reach; ++s) {
    const double here = cut.at(peak + dir * static_cast<std::ptrdiff_t>(s));
    const double next = cut.at(peak + dir * static_cast<std::ptrdiff_t>(s + 1));
    if (next > here || here == 0.0) {
      side.lobe = s;
      break;
    }
  }
  return side;
}

bool near(double a, double b) { return std::abs(a - b) <= kAxisTol; }

bool uniform(const std::vector<double>& axis) {
  const double step = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (std::abs((axis[i] - axis[i - 1]) - step) > kAxisTol) return false;
  }
  return true;
}

double axis_step(const std::vector<double>& axis) {
  return (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
}

class GridView {
 public:
  explicit GridView(const AngularPatternGrid& g) : g_(g) {
    full_theta_ = near(g.theta_axis.front(), 0.0) && near(g.theta_axis.back(), kPi) && uniform(g.theta_axis);
    full_phi_ = near(g.phi_axis.front(), 0.0) && near(g.phi_axis.back(), kTwoPi) && uniform(g.phi_axis);
  }

  bool periodic_phi() const { return full_phi_; }
  // Distinct azimuth columns on a periodic grid (the 2pi column duplicates 0).
  std::size_t ring_cols() const { return full_phi_ ? g_.cols() - 1 : g_.cols(); }
  bool is_pole_row(std::size_t row) const {
    return full_theta_ && (row == 0 || row == g_.rows() - 1);
  }

  // Column whose azimuth is phi(col) + offset (mod 2pi), if present on the grid.
  std::optional<std::size_t> shifted_col(std::size_t col, double offset) const {
    if (!full_phi_) return std::nullopt;
    const double step = axis_step(g_.phi_axis);
    const double shift = offset / step;
    if (std::abs(shift - std::round(shift)) > 1e-6) return std::nullopt;
    const auto n = static_cast<long long>(ring_cols());
    const long long target = (static_cast<long long>(col % ring_cols()) + std::llround(shift)) % n;
    return static_cast<std::size_t>((target + n) % n);
  }

  // theta-cut through (row, col). Continues over both poles along the opposite
  // meridian when the grid spans the full sphere.
  Cut meridian(std::size_t row, std::size_t col) const {
    Cut cut;
    cut.step = axis_step(g_.theta_axis);
    const auto opposite = full_theta_ ? shifted_col(col, kPi) : std::nullopt;
    for (std::size_t i = 0; i < g_.rows(); ++i) push(cut, i, col);
    if (opposite) {
      cut.periodic = true;
      for (std::size_t i = g_.rows() - 2; i >= 1; --i) push(cut, i, *opposite);
    }
    cut.peak = row;
    return cut;
  }

  Cut parallel(std::size_t row, std::size_t col) const {
    Cut cut;
    cut.step = axis_step(g_.phi_axis);
    cut.periodic = full_phi_;
    for (std::size_t j = 0; j < ring_cols(); ++j) push(cut, row, j);
    cut.peak = col % ring_cols();
    return cut;
  }

  double value(std::size_t row, std::size_t col) const { return g_.at(row, col); }

 private:
  void push(Cut& cut, std::size_t row, std::size_t col) const {
    cut.values.push_back(g_.at(row, col));
    cut.cells.emplace_back(row, col);
  }

  const AngularPatternGrid& g_;
  bool full_theta_ = false;
  bool full_phi_ = false;
};

// Main-lobe bounding box in grid indices: a row interval times a column arc.
struct LobeBox {
  std::size_t row_lo = 0;
  std::size_t row_hi = 0;
  bool all_cols = false;
  std::size_t col_start = 0;
  std::size_t col_len = 0;

  bool contains(std::size_t row, std::size_t col, const GridView& view) const {
    if (row < row_lo || row > row_hi) return false;
    if (all_cols) return true;
    const std::size_t n = view.ring_cols();
    const std::size_t c = col % n;
    if (view.periodic_phi()) return (c + n - col_start) % n < col_len;
    return c >= col_start && c - col_start < col_len;
  }
};

void check_non_degenerate(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::DegeneratePattern, "pattern is empty");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*hi > 0.0)) throw Error(ErrorCode::DegeneratePattern, "pattern has no positive entry");
  if (*lo == *hi) throw Error(ErrorCode::DegeneratePattern, "pattern is flat");
}

}  // namespace

BeamMetrics angular_metrics(const AngularPatternGrid& grid, const SphericalPoint& focal) {
  if (grid.rows() < 2 || grid.cols() < 2 || grid.power.size() != grid.rows() * grid.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "grid axes do not match the power matrix");
  }
  check_non_degenerate(grid.power);

  BeamMetrics m;
  m.focal_theta = focal.theta;
  m.focal_phi = focal.phi;

  // First occurrence of the maximum = smallest row-major index.
  const auto peak_it = std::max_element(grid.power.begin(), grid.power.end());
  const auto peak_index = static_cast<std::size_t>(peak_it - grid.power.begin());
  const double peak_value = *peak_it;
  m.peak_row = peak_index / grid.cols();
  m.peak_col = peak_index % grid.cols();
  m.peak_theta = grid.theta_axis[m.peak_row];
  m.peak_phi = grid.phi_axis[m.peak_col];
  m.pointing_error = angle_between(direction(m.peak_theta, m.peak_phi), direction(focal.theta, focal.phi));

  const GridView view(grid);
  const Cut theta_cut = view.meridian(m.peak_row, m.peak_col);

  // A pole row is a single direction, so its azimuth cut is replaced by the
  // meridian a quarter turn away.
  std::optional<Cut> phi_cut;
  if (view.is_pole_row(m.peak_row)) {
    if (const auto quarter = view.shifted_col(m.peak_col, kPi / 2.0)) phi_cut = view.meridian(m.peak_row, *quarter);
  }
  if (!phi_cut) phi_cut = view.parallel(m.peak_row, m.peak_col);

  const Side t_lo = walk(theta_cut, -1);
  const Side t_hi = walk(theta_cut, +1);
  const Side p_lo = walk(*phi_cut, -1);
  const Side p_hi = walk(*phi_cut, +1);
  m.hpbw_theta = (t_lo.crossing + t_hi.crossing) * theta_cut.step;
  m.hpbw_phi = (p_lo.crossing + p_hi.crossing) * phi_cut->step;
  m.one_sided = t_lo.truncated || t_hi.truncated || p_lo.truncated || p_hi.truncated;

  // Bounding box of both cuts' main-lobe cells.
  LobeBox box;
  box.row_lo = m.peak_row;
  box.row_hi = m.peak_row;
  bool crosses_pole = view.is_pole_row(m.peak_row);
  auto absorb = [&](const Cut& cut, const Side& lo, const Side& hi) {
    for (auto s = -static_cast<std::ptrdiff_t>(lo.lobe); s <= static_cast<std::ptrdiff_t>(hi.lobe); ++s) {
      const auto& [row, col] = cut.cell(static_cast<std::ptrdiff_t>(cut.peak) + s);
      box.row_lo = std::min(box.row_lo, row);
      box.row_hi = std::max(box.row_hi, row);
      if (view.is_pole_row(row)) crosses_pole = true;
    }
  };
  absorb(theta_cut, t_lo, t_hi);
  absorb(*phi_cut, p_lo, p_hi);
  if (crosses_pole || !(phi_cut->cells.front().first == m.peak_row && phi_cut->cells.back().first == m.peak_row)) {
    box.all_cols = true;
  } else {
    const std::size_t n = view.ring_cols();
    const std::size_t start_offset = p_lo.lobe;
    box.col_start = view.periodic_phi() ? (phi_cut->peak + n - start_offset % n) % n : phi_cut->peak - start_offset;
    box.col_len = std::min(n, p_lo.lobe + p_hi.lobe + 1);
  }

  // Highest positive 8-neighbour local maximum outside the box.
  double best = 0.0;
  const std::size_t rows = grid.rows();
  const std::size_t cols = grid.cols();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = grid.at(i, j);
      if (!(v > best) || box.contains(i, j, view)) continue;
      bool local_max = true;
      for (int di = -1; di <= 1 && local_max; ++di) {
        for (int dj = -1; dj <= 1 && local_max; ++dj) {
          if (di == 0 && dj == 0) continue;
          const auto ni = static_cast<std::ptrdiff_t>(i) + di;
          if (ni < 0 || ni >= static_cast<std::ptrdiff_t>(rows)) continue;
          auto nj = static_cast<std::ptrdiff_t>(j) + dj;
          if (view.periodic_phi()) {
            const auto n = static_cast<std::ptrdiff_t>(view.ring_cols());
            nj = ((nj % n) + n) % n;
          } else if (nj < 0 || nj >= static_cast<std::ptrdiff_t>(cols)) {
            continue;
          }
          if (grid.at(static_cast<std::size_t>(ni), static_cast<std::size_t>(nj)) > v) local_max = false;
        }
      }
      if (local_max) best = v;
    }
  }
  m.peak_sidelobe_db = best > 0.0 ? 10.0 * std::log10(best / peak_value) : kDbFloor;
  return m;
}

FocusMetrics focus_metrics(const DistancePattern& pattern) {
  if (pattern.r_axis.size() < 2 || pattern.r_axis.size() != pattern.power.size()) {
    throw Error(ErrorCode::DimensionMismatch, "range axis does not match the power list");
  }
  check_non_degenerate(pattern.power);

  Cut cut;
  cut.values = pattern.power;
  cut.cells.resize(cut.values.size());
  cut.step = axis_step(pattern.r_axis);
  cut.peak = static_cast<std::size_t>(std::max_element(cut.values.begin(), cut.values.end()) - cut.values.begin());

  const Side lo = walk(cut, -1);
  const Side hi = walk(cut, +1);

  FocusMetrics f;
  f.peak_index = cut.peak;
  f.peak_r = pattern.r_axis[cut.peak];
  f.lower_r = f.peak_r - lo.crossing * cut.step;
  f.upper_r = f.peak_r + hi.crossing * cut.step;
  if (lo.truncated) f.lower_r = pattern.r_axis.front();
  if (hi.truncated) f.upper_r = pattern.r_axis.back();
  f.depth_of_focus = f.upper_r - f.lower_r;
  f.focal_error = std::abs(f.peak_r - pattern.focal_range);
  f.one_sided = lo.truncated || hi.truncated;
  return f;
}

IsotropyReport isotropy_report(std::span<const BeamMetrics> metrics) {
  if (metrics.size() < 2) throw Error(ErrorCode::InvalidArgument, "isotropy report needs at least two beams");

  IsotropyReport r;
  double t_min = std::numeric_limits<double>::infinity();
  double t_max = 0.0;
  double p_min = std::numeric_limits<double>::infinity();
  double p_max = 0.0;
  double s_min = std::numeric_limits<double>::infinity();
  double s_max = -std::numeric_limits<double>::infinity();
  for (const auto& m : metrics) {
    if (m.degenerate) continue;
    ++r.beams;
    t_min = std::min(t_min, m.hpbw_theta);
    t_max = std::max(t_max, m.hpbw_theta);
    p_min = std::min(p_min, m.hpbw_phi);
    p_max = std::max(p_max, m.hpbw_phi);
    if (m.peak_sidelobe_db > kDbFloor) {
      s_min = std::min(s_min, m.peak_sidelobe_db);
      s_max = std::max(s_max, m.peak_sidelobe_db);
    }
  }
  if (r.beams == 0) throw Error(ErrorCode::DegeneratePattern, "every beam in the report is degenerate");

  r.hpbw_theta_min = t_min;
  r.hpbw_theta_max = t_max;
  r.hpbw_theta_ratio = t_max / t_min;
  r.hpbw_phi_min = p_min;
  r.hpbw_phi_max = p_max;
  r.hpbw_phi_ratio = p_max / p_min;
  if (s_max >= s_min) {
    r.sidelobe_min_db = s_min;
    r.sidelobe_max_db = s_max;
    r.sidelobe_ratio = std::pow(10.0, (s_max - s_min) / 10.0);
  }
  return r;
}

void write_metrics_csv_header(std::ostream& out) {
  out << "focal_theta,focal_phi,peak_theta,peak_phi,pointing_err,hpbw_theta,hpbw_phi,psl_db\n";
}

void write_metrics_csv_row(std::ostream& out, const BeamMetrics& m) {
  out << format_double(m.focal_theta) << ',' << format_double(m.focal_phi) << ',' << format_double(m.peak_theta) << ','
      << format_double(m.peak_phi) << ',' << format_double(m.pointing_error) << ',' << format_double(m.hpbw_theta)
      << ',' << format_double(m.hpbw_phi) << ',' << format_double(m.peak_sidelobe_db) << '\n';
}

}  // namespace saa
