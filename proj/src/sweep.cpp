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
#include "saa/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "saa/error.hpp"
#include "saa/format.hpp"

namespace saa {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> normalized(const std::vector<double>& raw, Normalization::Mode mode, double focal_response,
                               double& reference) {
  const auto norm = normalize_pattern(
      raw, mode == Normalization::Mode::GridMax ? Normalization::grid_max() : Normalization::focal_response(focal_response));
  reference = norm.reference;
  return norm.linear;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::vector<double>> read_numeric_csv(std::istream& in, std::string_view header, std::size_t columns) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw Error(ErrorCode::ParseError, "line 1: expected header '" + std::string(header) + "'");
  }
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != columns) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(columns) + " fields");
    }
    std::vector<double> row;
    for (auto f : fields) {
      const auto v = parse_double(f);
      if (!v) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad number '" + std::string(f) + "'");
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, "pattern file has no data rows");
  return rows;
}

double from_db(double db) { return db <= kDbFloor ? 0.0 : std::pow(10.0, db / 10.0); }

}  // namespace

void AngularSweepSpec::validate() const {
  if (theta_samples < 2 || phi_samples < 2) {
    throw Error(ErrorCode::InvalidArgument, "angular sweeps need at least 2 samples per axis");
  }
  if (!(theta_min >= 0.0 && theta_max <= kPi && theta_min < theta_max)) {
    throw Error(ErrorCode::InvalidArgument, "theta range must satisfy 0 <= min < max <= pi");
  }
  if (!(phi_min >= 0.0 && phi_max <= kTwoPi && phi_min < phi_max)) {
    throw Error(ErrorCode::InvalidArgument, "phi range must satisfy 0 <= min < max <= 2pi");
  }
  if (!(std::isfinite(eval_range) && eval_range > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "evaluation range must be finite and > 0");
  }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "linspace needs at least 2 samples");
  std::vector<double> out(n);
  const double span = hi - lo;
  const double last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + span * (static_cast<double>(i) / last);
  out.front() = lo;
  out.back() = hi;
  return out;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> probe_responses(const ArrayGeometry& geometry, double wavelength, const BeamWeights& weights,
                                    std::span<const SphericalPoint> probes, const SweepOptions& options) {
  std::vector<double> raw(probes.size(), 0.0);
  parallel_for(probes.size(), options.threads, [&](std::size_t i) {
    raw[i] = beam_response(weights, los_channel(geometry, probes[i], wavelength, options.amplitude));
  });
  return raw;
}

std::vector<SphericalPoint> angular_probes(const AngularSweepSpec& spec) {
  spec.validate();
  const auto thetas = linspace(spec.theta_min, spec.theta_max, spec.theta_samples);
  const auto phis = linspace(spec.phi_min, spec.phi_max, spec.phi_samples);
  std::vector<SphericalPoint> probes;
  probes.reserve(thetas.size() * phis.size());
  for (double t : thetas) {
    for (double p : phis) probes.push_back({spec.eval_range, t, p});
  }
  return probes;
}

AngularPatternGrid angular_sweep(const ArrayGeometry& geometry, double wavelength, const SphericalPoint& focal,
                                 const AngularSweepSpec& spec, const SweepOptions& options) {
  spec.validate();
  const auto h_focal = los_channel(geometry, focal, wavelength, options.amplitude);
  const auto w = conjugate_weights(h_focal);
  const auto probes = angular_probes(spec);
  const auto raw = probe_responses(geometry, wavelength, w, probes, options);

  AngularPatternGrid grid;
  grid.theta_axis = linspace(spec.theta_min, spec.theta_max, spec.theta_samples);
  grid.phi_axis = linspace(spec.phi_min, spec.phi_max, spec.phi_samples);
  grid.focal = focal;
  grid.focal_gain = power(h_focal);
  grid.power = normalized(raw, options.normalization, beam_response(w, h_focal), grid.reference);
  return grid;
}

OverlayResult multi_focal_overlay(const ArrayGeometry& geometry, double wavelength,
                                  std::span<const SphericalPoint> focals, const AngularSweepSpec& spec,
                                  const SweepOptions& options) {
  if (focals.empty()) throw Error(ErrorCode::InvalidArgument, "overlay needs at least one focal point");
  OverlayResult result;
  for (std::size_t i = 0; i < focals.size(); ++i) {
    try {
      result.beams.push_back(angular_sweep(geometry, wavelength, focals[i], spec, options));
      result.beam_focal_index.push_back(i);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoVisibleElements) throw;
      result.skipped.push_back(i);
    }
  }
  if (result.beams.empty()) {
    throw Error(ErrorCode::AllBeamsInfeasible, "none of the " + std::to_string(focals.size()) +
                                                   " focal points is visible from the array");
  }

  result.overlay = result.beams.front();
  for (std::size_t b = 1; b < result.beams.size(); ++b) {
    const auto& beam = result.beams[b].power;
    for (std::size_t c = 0; c < beam.size(); ++c) result.overlay.power[c] = std::max(result.overlay.power[c], beam[c]);
  }
  if (result.beams.size() > 1) {
    result.overlay.focal.reset();
    result.overlay.reference = 0.0;
    result.overlay.focal_gain = 0.0;
  }
  return result;
}

DistancePattern distance_sweep(const ArrayGeometry& geometry, double wavelength, const SphericalPoint& focal,
                               const DistanceSweepSpec& spec, const SweepOptions& options) {
  if (spec.samples < 2) throw Error(ErrorCode::InvalidArgument, "distance sweeps need at least 2 samples");
  if (!(std::isfinite(spec.r_min) && std::isfinite(spec.r_max) && spec.r_min > 0.0 && spec.r_min < spec.r_max)) {
    throw Error(ErrorCode::InvalidArgument, "range window must satisfy 0 < r_min < r_max");
  }
  if (is_spherical(geometry.kind()) && !(spec.r_min > geometry.radius())) {
    throw Error(ErrorCode::TargetInsideArray, "r_min " + format_double(spec.r_min) + " m is inside the array radius " +
                                                  format_double(geometry.radius()) + " m");
  }
  if (!(focal.r >= spec.r_min && focal.r <= spec.r_max)) {
    throw Error(ErrorCode::InvalidArgument, "focal range " + format_double(focal.r) + " m lies outside the window");
  }

  const auto h_focal = los_channel(geometry, focal, wavelength, options.amplitude);
  const auto w = conjugate_weights(h_focal);

  DistancePattern pattern;
  pattern.r_axis = linspace(spec.r_min, spec.r_max, spec.samples);
  pattern.theta = focal.theta;
  pattern.phi = focal.phi;
  pattern.focal_range = focal.r;
  pattern.focal_gain = power(h_focal);

  std::vector<SphericalPoint> probes;
  probes.reserve(pattern.r_axis.size());
  for (double r : pattern.r_axis) probes.push_back({r, focal.theta, focal.phi});
  const auto raw = probe_responses(geometry, wavelength, w, probes, options);
  pattern.power = normalized(raw, options.normalization, beam_response(w, h_focal), pattern.reference);
  return pattern;
}

void write_angular_csv(std::ostream& out, const AngularPatternGrid& grid) {
  out << "theta_rad,phi_rad,power_db\n";
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    const std::string theta = format_double(grid.theta_axis[i]);
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      out << theta << ',' << format_double(grid.phi_axis[j]) << ',' << format_double(to_db(grid.at(i, j))) << '\n';
    }
  }
}

void write_distance_csv(std::ostream& out, const DistancePattern& pattern) {
  out << "r_m,power_db\n";
  for (std::size_t i = 0; i < pattern.r_axis.size(); ++i) {
    out << format_double(pattern.r_axis[i]) << ',' << format_double(to_db(pattern.power[i])) << '\n';
  }
}

AngularPatternGrid read_angular_csv(std::istream& in) {
  const auto rows = read_numeric_csv(in, "theta_rad,phi_rad,power_db", 3);
  AngularPatternGrid grid;
  for (const auto& row : rows) {
    if (grid.theta_axis.empty() || grid.theta_axis.back() != row[0]) grid.theta_axis.push_back(row[0]);
    if (grid.theta_axis.size() == 1) grid.phi_axis.push_back(row[1]);
    grid.power.push_back(from_db(row[2]));
  }
  if (grid.theta_axis.size() * grid.phi_axis.size() != rows.size()) {
    throw Error(ErrorCode::ParseError, "angular pattern is not a full theta x phi grid");
  }
  for (std::size_t c = 0; c < rows.size(); ++c) {
    if (rows[c][0] != grid.theta_axis[c / grid.cols()] || rows[c][1] != grid.phi_axis[c % grid.cols()]) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(c + 2) + ": row breaks the theta-outer grid order");
    }
  }
  return grid;
}

DistancePattern read_distance_csv(std::istream& in) {
  const auto rows = read_numeric_csv(in, "r_m,power_db", 2);
  DistancePattern pattern;
  for (const auto& row : rows) {
    pattern.r_axis.push_back(row[0]);
    pattern.power.push_back(from_db(row[1]));
  }
  return pattern;
}

}  // namespace saa
