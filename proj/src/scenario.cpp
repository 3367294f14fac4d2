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
#include "saa/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <system_error>

#include "saa/error.hpp"
#include "saa/format.hpp"
#include "presets.hpp"

namespace saa {

namespace {

namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

const std::set<std::string, std::less<>> kGeometryKeys = {"n",          "radius",      "spacing", "rings",
                                                          "ring_policy", "ring_count", "subdivision", "turns"};

const std::set<std::string, std::less<>> kKnownKeys = {
    "name",        "kind",      "n",           "radius",        "spacing",   "rings",     "ring_policy",
    "ring_count",  "subdivision", "turns",     "wavelength",    "focal",     "mode",      "normalization",
    "amplitude",   "theta_samples", "phi_samples", "theta_min", "theta_max", "phi_min",   "phi_max",
    "eval_range",  "r_min",     "r_max",       "r_samples",     "output_dir"};

std::set<std::string, std::less<>> geometry_keys_for(ArrayKind kind) {
  switch (kind) {
    case ArrayKind::SpiralSAA: return {"n", "radius"};
    case ArrayKind::UPA: return {"n", "spacing"};
    case ArrayKind::RingSAA: return {"rings", "ring_policy", "ring_count", "radius"};
    case ArrayKind::PolyhedralSAA: return {"subdivision", "radius"};
    case ArrayKind::SpiralCurveSAA: return {"n", "turns", "radius"};
  }
  return {};
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void invalid(std::string_view field, const std::string& what) {
  throw Error(ErrorCode::ValidationError, "field '" + std::string(field) + "': " + what);
}

std::optional<double> parse_number(std::string_view text) {
  const auto pi_pos = text.find("pi");
  if (pi_pos == std::string_view::npos) return parse_double(text);

  double coef = 1.0;
  const auto head = text.substr(0, pi_pos);
  if (head == "-") {
    coef = -1.0;
  } else if (!head.empty()) {
    if (head.back() != '*') return std::nullopt;
    const auto c = parse_double(head.substr(0, head.size() - 1));
    if (!c) return std::nullopt;
    coef = *c;
  }
  double den = 1.0;
  const auto tail = text.substr(pi_pos + 2);
  if (!tail.empty()) {
    if (tail.front() != '/') return std::nullopt;
    const auto d = parse_double(tail.substr(1));
    if (!d || *d == 0.0) return std::nullopt;
    den = *d;
  }
  return coef * kPi / den;
}

std::optional<std::size_t> parse_count(std::string_view text) {
  std::size_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

struct Document {
  std::map<std::string, Entry, std::less<>> values;
  std::vector<Entry> focals;

  const Entry* find(std::string_view key) const {
    const auto it = values.find(key);
    return it == values.end() ? nullptr : &it->second;
  }

  double number(std::string_view key, std::optional<double> fallback = std::nullopt) const {
    const Entry* e = find(key);
    if (!e) {
      if (fallback) return *fallback;
      invalid(key, "required");
    }
    const auto v = parse_number(e->value);
    if (!v || !std::isfinite(*v)) invalid(key, "'" + e->value + "' is not a number (line " + std::to_string(e->line) + ")");
    return *v;
  }

  std::size_t count(std::string_view key, std::optional<std::size_t> fallback = std::nullopt) const {
    const Entry* e = find(key);
    if (!e) {
      if (fallback) return *fallback;
      invalid(key, "required");
    }
    const auto v = parse_count(e->value);
    if (!v) invalid(key, "'" + e->value + "' is not a non-negative integer (line " + std::to_string(e->line) + ")");
    return *v;
  }

  std::string text(std::string_view key, std::string fallback = {}) const {
    const Entry* e = find(key);
    return e ? e->value : fallback;
  }
};

Document tokenize(std::string_view text) {
  Document doc;
  std::size_t line_no = 0;
  bool any = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    any = true;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_fail(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) parse_fail(line_no, "missing key");
    if (!std::all_of(key.begin(), key.end(), [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; })) {
      parse_fail(line_no, "malformed key '" + std::string(key) + "'");
    }
    if (value.empty()) parse_fail(line_no, "missing value for '" + std::string(key) + "'");

    if (!kKnownKeys.contains(key)) {
      throw Error(ErrorCode::ValidationError,
                  "field '" + std::string(key) + "': unknown key (line " + std::to_string(line_no) + ")");
    }
    Entry entry{std::string(value), line_no};
    if (key == "focal") {
      doc.focals.push_back(std::move(entry));
    } else if (!doc.values.emplace(std::string(key), std::move(entry)).second) {
      invalid(key, "duplicate key (line " + std::to_string(line_no) + ")");
    }
  }
  if (!any) parse_fail(1, "empty document");
  return doc;
}

SphericalPoint parse_focal(const Entry& e) {
  std::vector<std::string_view> tokens;
  std::string_view rest = e.value;
  while (!rest.empty()) {
    const auto b = rest.find_first_not_of(" \t,");
    if (b == std::string_view::npos) break;
    rest = rest.substr(b);
    const auto t = rest.find_first_of(" \t,");
    tokens.push_back(rest.substr(0, t));
    rest = t == std::string_view::npos ? std::string_view{} : rest.substr(t);
  }
  const std::string where = " (line " + std::to_string(e.line) + ")";
  if (tokens.size() != 3) invalid("focal", "expected 'r theta phi'" + where);
  std::array<double, 3> v{};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto x = parse_number(tokens[i]);
    if (!x || !std::isfinite(*x)) invalid("focal", "'" + std::string(tokens[i]) + "' is not a number" + where);
    v[i] = *x;
  }
  SphericalPoint p{v[0], v[1], v[2]};
  try {
    validate(p);
  } catch (const Error& err) {
    invalid("focal", std::string(err.what()) + where);
  }
  return p;
}

std::string_view field_for(ErrorCode code, const GeometrySpec& g) {
  switch (code) {
    case ErrorCode::InvalidRadius: return "radius";
    case ErrorCode::InvalidSpacing: return "spacing";
    case ErrorCode::InvalidArgument: return "turns";
    case ErrorCode::InvalidCount:
      if (g.kind == ArrayKind::RingSAA) return g.rings == 0 ? "rings" : "ring_count";
      return "n";
    default: return "n";
  }
}

GeometrySpec geometry_from(const Document& doc) {
  const Entry* kind = doc.find("kind");
  if (!kind) invalid("kind", "required");
  const auto parsed_kind = parse_array_kind(kind->value);
  if (!parsed_kind) invalid("kind", "unknown array kind '" + kind->value + "'");
  GeometrySpec g;
  g.kind = *parsed_kind;

  const auto allowed = geometry_keys_for(g.kind);
  for (const auto& key : kGeometryKeys) {
    if (doc.find(key) && !allowed.contains(key)) invalid(key, "not used by kind " + std::string(to_string(g.kind)));
  }
  if (allowed.contains("n")) g.n = doc.count("n");
  if (allowed.contains("radius")) g.radius = doc.number("radius");
  if (allowed.contains("spacing")) g.spacing = doc.number("spacing");
  if (allowed.contains("turns")) g.turns = doc.number("turns");
  if (allowed.contains("subdivision")) g.subdivision = doc.count("subdivision");
  if (allowed.contains("rings")) {
    g.rings = doc.count("rings");
    const std::string policy = doc.text("ring_policy", "proportional");
    if (policy == "proportional") {
      if (doc.find("ring_count")) invalid("ring_count", "only valid with ring_policy = fixed");
      g.ring_policy = RingPolicy::proportional();
    } else if (policy == "fixed") {
      g.ring_policy = RingPolicy::fixed(doc.count("ring_count"));
    } else {
      invalid("ring_policy", "expected proportional or fixed, got '" + policy + "'");
    }
  }
  if (g.subdivision > 8) invalid("subdivision", "at most 8 rounds are supported");

  try {
    build_geometry(g);
  } catch (const Error& e) {
    invalid(field_for(e.code(), g), e.what());
  }
  return g;

}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body, RunReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  body(out);
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
  report.files.push_back(path);
}

std::string focal_text(const SphericalPoint& p) {
  return format_double(p.r) + " " + format_double(p.theta) + " " + format_double(p.phi);
}

}  // namespace

ArrayGeometry build_geometry(const GeometrySpec& spec) {
  switch (spec.kind) {
    case ArrayKind::SpiralSAA: return golden_spiral_saa(spec.n, spec.radius);
    case ArrayKind::UPA: return upa(spec.n, spec.spacing);
    case ArrayKind::RingSAA: return ring_saa(spec.rings, spec.ring_policy, spec.radius);
    case ArrayKind::PolyhedralSAA: return polyhedral_saa(spec.subdivision, spec.radius);
    case ArrayKind::SpiralCurveSAA: return spiral_curve_saa(spec.n, spec.turns, spec.radius);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown array kind");
}

std::string_view to_string(SweepMode mode) noexcept {
  switch (mode) {
    case SweepMode::Angle: return "angle";
    case SweepMode::Distance: return "distance";
    case SweepMode::Both: return "both";
  }
  return "unknown";
}

Scenario parse_scenario(std::string_view text) {
  const Document doc = tokenize(text);
  Scenario s;
  s.name = doc.text("name");
  s.output_dir = doc.text("output_dir");

  s.geometry = geometry_from(doc);
  const GeometrySpec& g = s.geometry;

  s.wavelength = doc.number("wavelength");
  if (!(s.wavelength > 0.0)) invalid("wavelength", "must be > 0");

  if (doc.focals.empty()) invalid("focal", "at least one focal point is required");
  for (const auto& e : doc.focals) {
    s.focals.push_back(parse_focal(e));
    if (is_spherical(g.kind) && !(s.focals.back().r > g.radius)) {
      invalid("focal", "range must exceed the array radius (line " + std::to_string(e.line) + ")");
    }
  }

  const std::string mode = doc.text("mode", "angle");
  if (mode == "angle") {
    s.mode = SweepMode::Angle;
  } else if (mode == "distance") {
    s.mode = SweepMode::Distance;
  } else if (mode == "both") {
    s.mode = SweepMode::Both;
  } else {
    invalid("mode", "expected angle, distance or both, got '" + mode + "'");
  }

  const std::string norm = doc.text("normalization", "grid_max");
  const auto norm_mode = parse_normalization_mode(norm);
  if (!norm_mode) invalid("normalization", "expected grid_max or focal_response, got '" + norm + "'");
  s.normalization = *norm_mode;

  const std::string amp = doc.text("amplitude", "free_space");
  const auto amp_model = parse_amplitude_model(amp);
  if (!amp_model) invalid("amplitude", "expected free_space or unit, got '" + amp + "'");
  s.amplitude = *amp_model;

  AngularSweepSpec& a = s.angular;
  const AngularSweepSpec defaults;
  a.theta_samples = doc.count("theta_samples", defaults.theta_samples);
  a.phi_samples = doc.count("phi_samples", defaults.phi_samples);
  a.theta_min = doc.number("theta_min", defaults.theta_min);
  a.theta_max = doc.number("theta_max", defaults.theta_max);
  a.phi_min = doc.number("phi_min", defaults.phi_min);
  a.phi_max = doc.number("phi_max", defaults.phi_max);
  a.eval_range = doc.number("eval_range", defaults.eval_range);
  if (a.theta_samples < 2) invalid("theta_samples", "must be >= 2");
  if (a.phi_samples < 2) invalid("phi_samples", "must be >= 2");
  if (!(a.theta_min >= 0.0)) invalid("theta_min", "must be >= 0");
  if (!(a.theta_max <= kPi && a.theta_max > a.theta_min)) invalid("theta_max", "must satisfy theta_min < theta_max <= pi");
  if (!(a.phi_min >= 0.0)) invalid("phi_min", "must be >= 0");
  if (!(a.phi_max <= 2.0 * kPi && a.phi_max > a.phi_min)) invalid("phi_max", "must satisfy phi_min < phi_max <= 2pi");
  if (!(a.eval_range > 0.0)) invalid("eval_range", "must be > 0");
  if (s.has_angle() && is_spherical(g.kind) && !(a.eval_range > g.radius)) {
    invalid("eval_range", "must exceed the array radius");
  }

  DistanceSweepSpec& d = s.distance;
  const DistanceSweepSpec ddefaults;
  d.r_min = doc.number("r_min", ddefaults.r_min);
  d.r_max = doc.number("r_max", ddefaults.r_max);
  d.samples = doc.count("r_samples", ddefaults.samples);
  if (d.samples < 2) invalid("r_samples", "must be >= 2");
  if (!(d.r_min > 0.0)) invalid("r_min", "must be > 0");
  if (!(d.r_max > d.r_min)) invalid("r_max", "must exceed r_min");
  if (s.has_distance()) {
    if (is_spherical(g.kind) && !(d.r_min > g.radius)) invalid("r_min", "must exceed the array radius");
    for (const auto& f : s.focals) {
      if (f.r < d.r_min || f.r > d.r_max) invalid("focal", "range " + format_double(f.r) + " m is outside [r_min, r_max]");
    }
  }
  return s;
}

std::string emit_scenario(const Scenario& s) {
  std::ostringstream out;
  if (!s.name.empty()) out << "name = " << s.name << '\n';
  const GeometrySpec& g = s.geometry;
  out << "kind = " << to_string(g.kind) << '\n';
  const auto keys = geometry_keys_for(g.kind);
  if (keys.contains("n")) out << "n = " << g.n << '\n';
  if (keys.contains("rings")) {
    out << "rings = " << g.rings << '\n';
    if (g.ring_policy.mode == RingPolicy::Mode::Fixed) {
      out << "ring_policy = fixed\nring_count = " << g.ring_policy.count << '\n';
    } else {
      out << "ring_policy = proportional\n";
    }
  }
  if (keys.contains("subdivision")) out << "subdivision = " << g.subdivision << '\n';
  if (keys.contains("turns")) out << "turns = " << format_double(g.turns) << '\n';
  if (keys.contains("radius")) out << "radius = " << format_double(g.radius) << '\n';
  if (keys.contains("spacing")) out << "spacing = " << format_double(g.spacing) << '\n';
  out << "wavelength = " << format_double(s.wavelength) << '\n';
  for (const auto& f : s.focals) out << "focal = " << focal_text(f) << '\n';
  out << "mode = " << to_string(s.mode) << '\n';
  out << "normalization = " << to_string(s.normalization) << '\n';
  out << "amplitude = " << to_string(s.amplitude) << '\n';
  out << "theta_samples = " << s.angular.theta_samples << '\n';
  out << "phi_samples = " << s.angular.phi_samples << '\n';
  out << "theta_min = " << format_double(s.angular.theta_min) << '\n';
  out << "theta_max = " << format_double(s.angular.theta_max) << '\n';
  out << "phi_min = " << format_double(s.angular.phi_min) << '\n';
  out << "phi_max = " << format_double(s.angular.phi_max) << '\n';
  out << "eval_range = " << format_double(s.angular.eval_range) << '\n';
  out << "r_min = " << format_double(s.distance.r_min) << '\n';
  out << "r_max = " << format_double(s.distance.r_max) << '\n';
  out << "r_samples = " << s.distance.samples << '\n';
  if (!s.output_dir.empty()) out << "output_dir = " << s.output_dir << '\n';
  return out.str();
}

GeometrySpec parse_geometry(std::string_view text) {
  const Document doc = tokenize(text);
  for (const auto& [key, entry] : doc.values) {
    if (key != "kind" && !kGeometryKeys.contains(key)) invalid(key, "not a geometry key (line " + std::to_string(entry.line) + ")");
  }
  if (!doc.focals.empty()) invalid("focal", "not a geometry key");
  return geometry_from(doc);
}

SphericalPoint parse_focal_point(std::string_view text) { return parse_focal(Entry{std::string(trim(text)), 1}); }

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : preset_table()) names.emplace_back(p.name);
  return names;
}

std::string preset_text(std::string_view name) {
  for (const auto& p : preset_table()) {
    if (p.name == name) return std::string(p.text);
  }
  throw Error(ErrorCode::ValidationError, "field 'preset': unknown preset '" + std::string(name) + "'");
}

Scenario load_preset(std::string_view name) { return parse_scenario(preset_text(name)); }

RunReport run_scenario(const Scenario& s, unsigned threads) {
  RunReport report;
  try {
    if (s.output_dir.empty()) throw Error(ErrorCode::IoError, "no output directory given");
    const fs::path dir = s.output_dir;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
      throw Error(ErrorCode::IoError, "cannot create output directory '" + dir.string() + "'" +
                                          (ec ? ": " + ec.message() : std::string()));
    }

    const ArrayGeometry geometry = build_geometry(s.geometry);
    SweepOptions options;
    options.amplitude = s.amplitude;
    options.normalization = s.normalization;
    options.threads = threads;

    write_file(dir / "scenario.conf", [&](std::ostream& o) { o << emit_scenario(s); }, report);
    write_file(dir / "geometry.csv", [&](std::ostream& o) { write_geometry_csv(o, geometry); }, report);

    std::set<std::size_t> skipped;
    std::vector<std::size_t> beam_index;
    std::vector<double> beam_gain;

    if (s.has_angle()) {
      const auto overlay = multi_focal_overlay(geometry, s.wavelength, s.focals, s.angular, options);
      skipped.insert(overlay.skipped.begin(), overlay.skipped.end());
      write_file(dir / "pattern_angle.csv", [&](std::ostream& o) { write_angular_csv(o, overlay.overlay); }, report);
      for (std::size_t b = 0; b < overlay.beams.size(); ++b) {
        const std::size_t idx = overlay.beam_focal_index[b];
        write_file(dir / ("pattern_angle_beam" + std::to_string(idx) + ".csv"),
                   [&](std::ostream& o) { write_angular_csv(o, overlay.beams[b]); }, report);
        BeamMetrics m;
        try {
          m = angular_metrics(overlay.beams[b], s.focals[idx]);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::DegeneratePattern) throw;
          m.focal_theta = s.focals[idx].theta;
          m.focal_phi = s.focals[idx].phi;
          m.degenerate = true;
        }
        report.beam_metrics.push_back(m);
        beam_index.push_back(idx);
        beam_gain.push_back(overlay.beams[b].focal_gain);
      }
      write_file(dir / "metrics.csv", [&](std::ostream& o) {
        write_metrics_csv_header(o);
        for (const auto& m : report.beam_metrics) write_metrics_csv_row(o, m);
      }, report);
      const auto usable = std::count_if(report.beam_metrics.begin(), report.beam_metrics.end(),
                                        [](const BeamMetrics& m) { return !m.degenerate; });
      if (report.beam_metrics.size() >= 2 && usable > 0) report.isotropy = isotropy_report(report.beam_metrics);
    }

    std::vector<std::size_t> focus_index;
    if (s.has_distance()) {
      for (std::size_t i = 0; i < s.focals.size(); ++i) {
        DistancePattern pattern;
        try {
          pattern = distance_sweep(geometry, s.wavelength, s.focals[i], s.distance, options);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NoVisibleElements) throw;
          skipped.insert(i);
          continue;
        }
        write_file(dir / ("pattern_distance_" + std::to_string(i) + ".csv"),
                   [&](std::ostream& o) { write_distance_csv(o, pattern); }, report);
        report.focus_metrics.push_back(focus_metrics(pattern));
        focus_index.push_back(i);
      }
      if (focus_index.empty()) {
        throw Error(ErrorCode::AllBeamsInfeasible, "no focal point admits a distance beam");
      }
      write_file(dir / "focus_metrics.csv", [&](std::ostream& o) {
        o << "focal_r,focal_theta,focal_phi,peak_r,lower_r,upper_r,depth_of_focus,focal_err,one_sided\n";
        for (std::size_t k = 0; k < focus_index.size(); ++k) {
          const auto& f = report.focus_metrics[k];
          const auto& p = s.focals[focus_index[k]];
          o << format_double(p.r) << ',' << format_double(p.theta) << ',' << format_double(p.phi) << ','
            << format_double(f.peak_r) << ',' << format_double(f.lower_r) << ',' << format_double(f.upper_r) << ','
            << format_double(f.depth_of_focus) << ',' << format_double(f.focal_error) << ',' << (f.one_sided ? 1 : 0)
            << '\n';
        }
      }, report);
    }
    report.skipped.assign(skipped.begin(), skipped.end());

    auto join_skipped = [&] {
      std::string out;
      for (auto i : report.skipped) out += (out.empty() ? "" : ",") + std::to_string(i);
      return out.empty() ? std::string("none") : out;
    };

    write_file(dir / "metadata.txt", [&](std::ostream& o) {
      o << "kind = " << to_string(s.geometry.kind) << '\n';
      o << "n = " << geometry.size() << '\n';
      if (is_spherical(geometry.kind())) {
        o << "radius_m = " << format_double(geometry.radius()) << '\n';
      } else {
        o << "spacing_m = " << format_double(geometry.spacing()) << '\n';
      }
      o << "wavelength_m = " << format_double(s.wavelength) << '\n';
      o << "amplitude = " << to_string(s.amplitude) << '\n';
      o << "normalization = " << to_string(s.normalization) << '\n';
      o << "mode = " << to_string(s.mode) << '\n';
      for (std::size_t i = 0; i < s.focals.size(); ++i) o << "focal." << i << " = " << focal_text(s.focals[i]) << '\n';
      o << "theta_samples = " << s.angular.theta_samples << '\n';
      o << "phi_samples = " << s.angular.phi_samples << '\n';
      o << "theta_range = " << format_double(s.angular.theta_min) << ' ' << format_double(s.angular.theta_max) << '\n';
      o << "phi_range = " << format_double(s.angular.phi_min) << ' ' << format_double(s.angular.phi_max) << '\n';
      o << "eval_range_m = " << format_double(s.angular.eval_range) << '\n';
      o << "r_window_m = " << format_double(s.distance.r_min) << ' ' << format_double(s.distance.r_max) << '\n';
      o << "r_samples = " << s.distance.samples << '\n';
      o << "skipped = " << join_skipped() << '\n';
    }, report);

    write_file(dir / "metrics.txt", [&](std::ostream& o) {
      for (std::size_t b = 0; b < report.beam_metrics.size(); ++b) {
        const auto& m = report.beam_metrics[b];
        const std::string p = "beam." + std::to_string(beam_index[b]) + ".";
        o << p << "focal = " << focal_text(s.focals[beam_index[b]]) << '\n';
        o << p << "degenerate = " << (m.degenerate ? "true" : "false") << '\n';
        o << p << "peak_theta = " << format_double(m.peak_theta) << '\n';
        o << p << "peak_phi = " << format_double(m.peak_phi) << '\n';
        o << p << "pointing_err = " << format_double(m.pointing_error) << '\n';
        o << p << "hpbw_theta = " << format_double(m.hpbw_theta) << '\n';
        o << p << "hpbw_phi = " << format_double(m.hpbw_phi) << '\n';
        o << p << "psl_db = " << format_double(m.peak_sidelobe_db) << '\n';
        o << p << "one_sided = " << (m.one_sided ? "true" : "false") << '\n';
        o << p << "focal_gain = " << format_double(beam_gain[b]) << '\n';
      }
      if (report.isotropy) {
        const auto& r = *report.isotropy;
        o << "isotropy.beams = " << r.beams << '\n';
        o << "isotropy.hpbw_theta_min = " << format_double(r.hpbw_theta_min) << '\n';
        o << "isotropy.hpbw_theta_max = " << format_double(r.hpbw_theta_max) << '\n';
        o << "isotropy.hpbw_theta_ratio = " << format_double(r.hpbw_theta_ratio) << '\n';
        o << "isotropy.hpbw_phi_min = " << format_double(r.hpbw_phi_min) << '\n';
        o << "isotropy.hpbw_phi_max = " << format_double(r.hpbw_phi_max) << '\n';
        o << "isotropy.hpbw_phi_ratio = " << format_double(r.hpbw_phi_ratio) << '\n';
        o << "isotropy.psl_min_db = " << format_double(r.sidelobe_min_db) << '\n';
        o << "isotropy.psl_max_db = " << format_double(r.sidelobe_max_db) << '\n';
        o << "isotropy.psl_ratio = " << format_double(r.sidelobe_ratio) << '\n';
      }
      for (std::size_t k = 0; k < report.focus_metrics.size(); ++k) {
        const auto& f = report.focus_metrics[k];
        const std::string p = "focus." + std::to_string(focus_index[k]) + ".";
        o << p << "peak_r = " << format_double(f.peak_r) << '\n';
        o << p << "depth_of_focus = " << format_double(f.depth_of_focus) << '\n';
        o << p << "focal_err = " << format_double(f.focal_error) << '\n';
        o << p << "one_sided = " << (f.one_sided ? "true" : "false") << '\n';
      }
    }, report);

    write_file(dir / "summary.txt", [&](std::ostream& o) {
      o << "scenario: " << (s.name.empty() ? "(unnamed)" : s.name) << '\n';
      o << "array: " << to_string(s.geometry.kind) << ", " << geometry.size() << " elements, ";
      if (is_spherical(geometry.kind())) {
        o << "R = " << format_double(geometry.radius()) << " m";
      } else {
        o << "d = " << format_double(geometry.spacing()) << " m";
      }
      o << ", lambda = " << format_double(s.wavelength) << " m, amplitude " << to_string(s.amplitude) << "\n";
      o << "focal points: " << s.focals.size() << ", skipped: " << join_skipped() << "\n\n";
      constexpr double deg = 180.0 / kPi;
      if (!report.beam_metrics.empty()) {
        o << "angular beams (degrees)\n";
        o << "  idx  focal(theta,phi)      peak(theta,phi)       err    hpbw_t  hpbw_p  psl_db\n";
        for (std::size_t b = 0; b < report.beam_metrics.size(); ++b) {
          const auto& m = report.beam_metrics[b];
          char line[160];
          std::snprintf(line, sizeof line, "  %3zu  (%7.2f,%7.2f)  (%7.2f,%7.2f)  %6.3f  %6.3f  %6.3f  %7.2f%s\n",
                        beam_index[b], m.focal_theta * deg, m.focal_phi * deg, m.peak_theta * deg, m.peak_phi * deg,
                        m.pointing_error * deg, m.hpbw_theta * deg, m.hpbw_phi * deg, m.peak_sidelobe_db,
                        m.degenerate ? "  degenerate" : "");
          o << line;
        }
        if (report.isotropy) {
          o << "  hpbw_theta max/min = " << format_double(report.isotropy->hpbw_theta_ratio) << '\n';
        }
        o << '\n';
      }
      if (!report.focus_metrics.empty()) {
        o << "distance beams (m)\n";
        for (std::size_t k = 0; k < report.focus_metrics.size(); ++k) {
          const auto& f = report.focus_metrics[k];
          char line[160];
          std::snprintf(line, sizeof line, "  %3zu  peak %.3f  -3dB [%.3f, %.3f]  depth %.3f  err %.3f%s\n",
                        focus_index[k], f.peak_r, f.lower_r, f.upper_r, f.depth_of_focus, f.focal_error,
                        f.one_sided ? "  one-sided" : "");
          o << line;
        }
      }
    }, report);

    report.exit_code = report.skipped.empty() ? 0 : 2;
  } catch (const Error& e) {
    report.exit_code = 1;
    report.message = e.what();
  } catch (const std::exception& e) {
    report.exit_code = 1;
    report.message = e.what();
  }
  return report;
}

}  // namespace saa
