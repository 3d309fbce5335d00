// Copyright 2026 The scootnav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// scootnav: closed-loop simulation, path checks and sensor-log replay.

#include "scootnav/scootnav.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace
{

namespace fs = std::filesystem;
using namespace scootnav;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitStalled = 2;
constexpr int kExitTimeLimit = 3;

int cmd_run(const fs::path & config_file, std::optional<std::uint64_t> seed, std::optional<fs::path> out)
{
  config::RunConfig rc;
  try {
    rc = config::load_run_config(config_file);
  } catch (const Error & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  if (seed) rc.scenario.sensors.seed = *seed;
  const fs::path dir = out ? *out : rc.output_dir;

  const RunLog log = run_closed_loop(rc.scenario);
  const RunMetrics m = evaluate_run(log, rc.scenario.path, rc.scenario.limits, rc.scenario.vehicle);
  io::write_run(dir, log, m);
  io::write_text(dir / "position.svg", svg::run_position_svg(log, rc.scenario.path));
  io::write_text(dir / "vel_steer.svg", svg::run_vel_steer_svg(log, rc.scenario.limits));
  io::write_text(dir / "roll.svg", svg::run_roll_svg(log, rc.scenario.limits.roll_rate_max));

  std::printf(
    "status %s  t=%.2f s  min sdf front %.3f rear %.3f  max v %.4f  max roll rate %.4f rad/s\n",
    to_string(log.status).c_str(), log.end_time, m.min_sdf_front, m.min_sdf_rear, m.max_v, m.max_roll_rate);
  std::printf(
    "ekf rmse %.4f m (gnss %.4f m)  solve mean %.1f ms p99 %.1f ms  -> %s\n", m.ekf_rmse, m.gnss_rmse,
    1e3 * m.mean_solve_time, 1e3 * m.p99_solve_time, dir.string().c_str());
  switch (log.status) {
    case RunStatus::Completed: return kExitOk;
    case RunStatus::SolverStalled: return kExitStalled;
    case RunStatus::TimeLimit: return kExitTimeLimit;
  }
  return kExitError;
}

int cmd_check_path(const fs::path & file)
{
  Path path = build_path({Point2(0, 0), Point2(1, 0)}, 1.0);
  try {
    path = config::load_path(file);
  } catch (const Error & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  std::printf("segments %zu  total length %.3f m  min half width %.3f m\n", path.size(), path.total_length(),
              path.min_half_width());
  std::printf("%4s %10s %10s %10s %10s %9s %9s %8s\n", "seg", "x0", "y0", "x1", "y1", "length", "heading", "width");
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Segment & s = path.segments()[i];
    std::printf("%4zu %10.3f %10.3f %10.3f %10.3f %9.3f %9.4f %8.3f\n", i, s.a.x(), s.a.y(), s.b.x(), s.b.y(),
                s.length(), s.heading(), s.half_width);
  }
  return kExitOk;
}

int cmd_replay(const fs::path & config_file, const fs::path & log_file, std::optional<fs::path> out)
{
  try {
    // The path is not needed for localization, so only the config itself is read.
    const config::Document doc = config::load_document(config_file);
    const config::RunConfig rc = config::parse_run_config(doc, config_file.parent_path());
    const std::vector<SensorRow> rows = parse_sensor_log(io::read_text(log_file));
    const ScenarioConfig & sc = rc.scenario;
    const ReplayResult res = replay_sensor_log(rows, sc.vehicle, sc.process_noise, sc.sensors.nominal_sigma);
    const fs::path dir = out ? *out : rc.output_dir;
    fs::create_directories(dir);
    io::write_text(dir / "ekf.csv", io::ekf_csv(res.ekf));
    io::write_text(dir / "replay.svg", svg::replay_svg(res.ekf));
    if (res.skipped > 0) std::fprintf(stderr, "warning: skipped %zu out-of-order rows\n", res.skipped);
    const EkfState & last = res.ekf.back().mean;
    std::printf("rows %zu  estimates %zu  skipped %zu  final (%.3f, %.3f, %.4f)  -> %s\n", rows.size(),
                res.ekf.size(), res.skipped, last.x, last.y, last.psi, dir.string().c_str());
  } catch (const Error & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"scootnav: corridor-constrained NMPC for a self-balancing scooter"};
  app.require_subcommand(1);

  fs::path run_config;
  std::optional<std::uint64_t> seed;
  std::optional<fs::path> run_out;
  auto * run = app.add_subcommand("run", "closed-loop simulation");
  run->add_option("--config", run_config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "override the sensor noise seed");
  run->add_option("--out", run_out, "output directory (overrides the config)");

  fs::path path_file;
  auto * check = app.add_subcommand("check-path", "validate a path file");
  check->add_option("file", path_file, "path file (JSON)")->required();

  fs::path replay_config, replay_log;
  std::optional<fs::path> replay_out;
  auto * replay = app.add_subcommand("replay", "run localization over a sensor log");
  replay->add_option("--config", replay_config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
  replay->add_option("--log", replay_log, "sensor log CSV")->required();
  replay->add_option("--out", replay_out, "output directory (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*run) return cmd_run(run_config, seed, run_out);
    if (*check) return cmd_check_path(path_file);
    if (*replay) return cmd_replay(replay_config, replay_log, replay_out);
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
