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
// saa: command-line front end for building array layouts, sweeping beam
// patterns, and running scenario files.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "saa/error.hpp"
#include "saa/format.hpp"
#include "saa/geometry.hpp"
#include "saa/metrics.hpp"
#include "saa/scenario.hpp"
#include "saa/sweep.hpp"

namespace {

namespace fs = std::filesystem;

// Flags shared by every command that needs an array layout.
struct GeometryFlags {
  std::string kind = "spiral_saa";
  std::optional<std::string> n, radius, spacing, rings, ring_policy, ring_count, subdivision, turns;

  void add_to(CLI::App& app) {
    app.add_option("--kind", kind, "spiral_saa | upa | ring_saa | polyhedral_saa | spiral_curve_saa")
        ->capture_default_str();
    app.add_option("--n", n, "element count (spiral_saa, upa, spiral_curve_saa)");
    app.add_option("--radius", radius, "sphere radius in m (SAA kinds)");
    app.add_option("--spacing", spacing, "lattice pitch in m (upa)");
    app.add_option("--rings", rings, "number of rings (ring_saa)");
    app.add_option("--ring-policy", ring_policy, "proportional | fixed (ring_saa)");
    app.add_option("--ring-count", ring_count, "elements per ring with --ring-policy fixed");
    app.add_option("--subdivision", subdivision, "subdivision rounds (polyhedral_saa)");
    app.add_option("--turns", turns, "spiral turns (spiral_curve_saa)");
  }

  void emit(std::ostream& doc) const {
    doc << "kind = " << kind << '\n';
    auto put = [&](const char* key, const std::optional<std::string>& v) {
      if (v) doc << key << " = " << *v << '\n';
    };
    put("n", n);
    put("radius", radius);
    put("spacing", spacing);
    put("rings", rings);
    put("ring_policy", ring_policy);
    put("ring_count", ring_count);
    put("subdivision", subdivision);
    put("turns", turns);
  }
};

// Flags that complete a scenario for the pattern commands.
struct PatternFlags {
  std::string wavelength;
  std::vector<std::string> focals;
  std::optional<std::string> normalization, amplitude;
  std::optional<std::string> theta_samples, phi_samples, theta_min, theta_max, phi_min, phi_max, eval_range;
  std::optional<std::string> r_min, r_max, r_samples;

  void add_common(CLI::App& app) {
    app.add_option("--wavelength", wavelength, "carrier wavelength in m")->required();
    app.add_option("--focal", focals, "focal point 'r,theta,phi' (radians; pi/6 style accepted), repeatable")
        ->required();
    app.add_option("--normalization", normalization, "grid_max | focal_response");
    app.add_option("--amplitude", amplitude, "free_space | unit");
  }
  void add_angle(CLI::App& app) {
    app.add_option("--theta-samples", theta_samples);
    app.add_option("--phi-samples", phi_samples);
    app.add_option("--theta-min", theta_min);
    app.add_option("--theta-max", theta_max);
    app.add_option("--phi-min", phi_min);
    app.add_option("--phi-max", phi_max);
    app.add_option("--eval-range", eval_range, "probe range in m");
  }
  void add_distance(CLI::App& app) {
    app.add_option("--r-min", r_min);
    app.add_option("--r-max", r_max);
    app.add_option("--r-samples", r_samples);
  }

  void emit(std::ostream& doc) const {
    doc << "wavelength = " << wavelength << '\n';
    for (const auto& f : focals) doc << "focal = " << f << '\n';
    auto put = [&](const char* key, const std::optional<std::string>& v) {
      if (v) doc << key << " = " << *v << '\n';
    };
    put("normalization", normalization);
    put("amplitude", amplitude);
    put("theta_samples", theta_samples);
    put("phi_samples", phi_samples);
    put("theta_min", theta_min);
    put("theta_max", theta_max);
    put("phi_min", phi_min);
    put("phi_max", phi_max);
    put("eval_range", eval_range);
    put("r_min", r_min);
    put("r_max", r_max);
    put("r_samples", r_samples);
  }
};

int report_run(const saa::RunReport& report, const std::string& out_dir) {
  if (report.exit_code == 1) {
    std::cerr << "error: " << report.message << '\n';
    return 1;
  }
  std::string skipped;
  for (auto i : report.skipped) skipped += (skipped.empty() ? "" : ",") + std::to_string(i);
  std::cout << "wrote " << report.files.size() << " files to " << out_dir << '\n';
  std::cout << "beams: " << report.beam_metrics.size() << " angular, " << report.focus_metrics.size() << " distance\n";
  std::cout << "skipped: " << (skipped.empty() ? "none" : skipped) << '\n';
  return report.exit_code;
}

int run_doc(const std::string& doc, const std::string& out_dir, unsigned threads) {
  auto scenario = saa::parse_scenario(doc);
  scenario.output_dir = out_dir;
  return report_run(saa::run_scenario(scenario, threads), out_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical / planar antenna-array beam pattern simulator"};
  app.require_subcommand(1);

  unsigned threads = 0;
  std::string out_dir;

  // geometry
  auto* geometry_cmd = app.add_subcommand("geometry", "write the element layout CSV");
  GeometryFlags geometry_flags;
  geometry_flags.add_to(*geometry_cmd);
  geometry_cmd->add_option("--out", out_dir, "output directory")->required();

  // pattern angle | distance
  auto* pattern_cmd = app.add_subcommand("pattern", "sweep a beam pattern");
  pattern_cmd->require_subcommand(1);
  auto* angle_cmd = pattern_cmd->add_subcommand("angle", "angular pattern at a fixed probe range");
  auto* distance_cmd = pattern_cmd->add_subcommand("distance", "range pattern along the focal direction");
  GeometryFlags angle_geometry, distance_geometry;
  PatternFlags angle_flags, distance_flags;
  for (auto [cmd, gf, pf] : {std::tuple{angle_cmd, &angle_geometry, &angle_flags},
                             std::tuple{distance_cmd, &distance_geometry, &distance_flags}}) {
    gf->add_to(*cmd);
    pf->add_common(*cmd);
    cmd->add_option("--out", out_dir, "output directory")->required();
    cmd->add_option("--threads", threads, "sweep worker threads (0 = all)");
  }
  angle_flags.add_angle(*angle_cmd);
  distance_flags.add_distance(*distance_cmd);

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "beam metrics from a pattern CSV");
  std::string pattern_path;
  std::string focal_text;
  std::optional<std::string> metrics_out;
  metrics_cmd->add_option("--pattern", pattern_path, "angular or distance pattern CSV")->required()->check(CLI::ExistingFile);
  metrics_cmd->add_option("--focal", focal_text, "focal point 'r,theta,phi'")->required();
  metrics_cmd->add_option("--out", metrics_out, "also write metrics.csv into this directory");

  // run
  auto* run_cmd = app.add_subcommand("run", "run a scenario file or a built-in preset");
  std::string scenario_path;
  std::string preset;
  bool dump_config = false;
  auto* file_opt = run_cmd->add_option("scenario", scenario_path, "scenario file")->check(CLI::ExistingFile);
  auto* preset_opt = run_cmd->add_option("--preset", preset, "built-in preset name");
  file_opt->excludes(preset_opt);
  run_cmd->add_option("--out", out_dir, "output directory (overrides output_dir)");
  run_cmd->add_option("--threads", threads, "sweep worker threads (0 = all)");
  run_cmd->add_flag("--dump-config", dump_config, "print the effective scenario and exit");

  // preset list | show
  auto* preset_cmd = app.add_subcommand("preset", "built-in scenario presets");
  preset_cmd->require_subcommand(1);
  auto* preset_list = preset_cmd->add_subcommand("list", "list preset names");
  auto* preset_show = preset_cmd->add_subcommand("show", "print a preset");
  std::string show_name;
  preset_show->add_option("name", show_name)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*geometry_cmd) {
      std::ostringstream doc;
      geometry_flags.emit(doc);
      const auto g = saa::build_geometry(saa::parse_geometry(doc.str()));
      fs::create_directories(out_dir);
      const fs::path path = fs::path(out_dir) / "geometry.csv";
      std::ofstream out(path, std::ios::binary);
      if (!out) throw saa::Error(saa::ErrorCode::IoError, "cannot open '" + path.string() + "'");
      saa::write_geometry_csv(out, g);
      std::cout << "wrote " << g.size() << " elements to " << path.string() << '\n';
      return 0;
    }

    if (angle_cmd->parsed() || distance_cmd->parsed()) {
      const bool angle = angle_cmd->parsed();
      std::ostringstream doc;
      (angle ? angle_geometry : distance_geometry).emit(doc);
      (angle ? angle_flags : distance_flags).emit(doc);
      doc << "mode = " << (angle ? "angle" : "distance") << '\n';
      return run_doc(doc.str(), out_dir, threads);
    }

    if (*metrics_cmd) {
      const auto focal = saa::parse_focal_point(focal_text);

      std::ifstream in(pattern_path, std::ios::binary);
      std::string header;
      std::getline(in, header);
      in.seekg(0);
      if (header == "r_m,power_db") {
        auto pattern = saa::read_distance_csv(in);
        pattern.focal_range = focal.r;
        pattern.theta = focal.theta;
        pattern.phi = focal.phi;
        const auto f = saa::focus_metrics(pattern);
        std::cout << "peak_r = " << saa::format_double(f.peak_r) << '\n'
                  << "lower_r = " << saa::format_double(f.lower_r) << '\n'
                  << "upper_r = " << saa::format_double(f.upper_r) << '\n'
                  << "depth_of_focus = " << saa::format_double(f.depth_of_focus) << '\n'
                  << "focal_err = " << saa::format_double(f.focal_error) << '\n'
                  << "one_sided = " << (f.one_sided ? "true" : "false") << '\n';
        return 0;
      }
      const auto grid = saa::read_angular_csv(in);
      const auto m = saa::angular_metrics(grid, focal);
      std::cout << "peak_theta = " << saa::format_double(m.peak_theta) << '\n'
                << "peak_phi = " << saa::format_double(m.peak_phi) << '\n'
                << "pointing_err = " << saa::format_double(m.pointing_error) << '\n'
                << "hpbw_theta = " << saa::format_double(m.hpbw_theta) << '\n'
                << "hpbw_phi = " << saa::format_double(m.hpbw_phi) << '\n'
                << "psl_db = " << saa::format_double(m.peak_sidelobe_db) << '\n'
                << "one_sided = " << (m.one_sided ? "true" : "false") << '\n';
      if (metrics_out) {
        fs::create_directories(*metrics_out);
        const fs::path path = fs::path(*metrics_out) / "metrics.csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw saa::Error(saa::ErrorCode::IoError, "cannot open '" + path.string() + "'");
        saa::write_metrics_csv_header(out);
        saa::write_metrics_csv_row(out, m);
      }
      return 0;
    }

    if (*run_cmd) {
      std::string text;
      if (!preset.empty()) {
        text = saa::preset_text(preset);
      } else if (!scenario_path.empty()) {
        std::ifstream in(scenario_path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
      } else {
        std::cerr << "error: give a scenario file or --preset\n";
        return 1;
      }
      auto scenario = saa::parse_scenario(text);
      if (!out_dir.empty()) scenario.output_dir = out_dir;
      if (dump_config) {
        std::cout << saa::emit_scenario(scenario);
        return 0;
      }
      return report_run(saa::run_scenario(scenario, threads), scenario.output_dir);
    }

    if (*preset_list) {
      for (const auto& name : saa::preset_names()) std::cout << name << '\n';
      return 0;
    }
    if (*preset_show) {
      std::cout << saa::preset_text(show_name);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
