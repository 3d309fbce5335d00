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

#ifndef SCOOTNAV_IO_HPP
#define SCOOTNAV_IO_HPP

#include "scootnav/error.hpp"
#include "scootnav/sim.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace scootnav::io
{

// CSV values use the shortest decimal form that parses back to the same double.

inline void put(std::string & out, double v)
{
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), res.ptr);
}

inline void put(std::string & out, int v) { out += std::to_string(v); }
inline void put(std::string & out, std::string_view v) { out += v; }

template <class... T>
void put_row(std::string & out, const T &... values)
{
  bool first = true;
  ((out += first ? "" : ",", first = false, put(out, values)), ...);
  out += '\n';
}

inline std::vector<std::string_view> split(std::string_view line)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

inline double parse_double(std::string_view s)
{
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Io, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

inline int parse_int(std::string_view s)
{
  int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorKind::Io, "not an integer: '" + std::string(s) + "'");
  }
  return v;
}

inline SqpStatus parse_status(std::string_view s)
{
  for (const SqpStatus st : {SqpStatus::Converged, SqpStatus::MaxIter, SqpStatus::InfeasibleQp}) {
    if (to_string(st) == s) return st;
  }
  throw Error(ErrorKind::Io, "unknown solver status '" + std::string(s) + "'");
}

inline constexpr std::string_view kPlantHeader =
  "t,x,y,psi,v,delta,front_x,front_y,v_cmd,delta_cmd,roll_cmd";
inline constexpr std::string_view kEkfHeader =
  "t,x,y,psi,p_xx,p_xy,p_xpsi,p_yy,p_ypsi,p_psipsi,z_e,z_n,true_x,true_y,true_psi";
inline constexpr std::string_view kMpcHeader =
  "t,px,py,v,cos_psi,sin_psi,delta,accel,steer_rate,ref_s,cost,kkt,max_slack,iterations,status";
inline constexpr std::string_view kCommandHeader = "t,k,tau,v_cmd,delta_cmd,pred_x,pred_y,ref_x,ref_y";

inline std::string plant_csv(std::span<const PlantRecord> rows)
{
  std::string out(kPlantHeader);
  out += '\n';
  for (const auto & r : rows) {
    const PlantState & s = r.state;
    put_row(out, r.t, s.x, s.y, s.psi, s.v, s.delta, r.front_x, r.front_y, r.v_cmd, r.delta_cmd, r.roll_cmd);
  }
  return out;
}

inline std::string ekf_csv(std::span<const EkfRecord> rows)
{
  std::string out(kEkfHeader);
  out += '\n';
  for (const auto & r : rows) {
    const Mat3 & p = r.cov;
    put_row(
      out, r.t, r.mean.x, r.mean.y, r.mean.psi, p(0, 0), p(0, 1), p(0, 2), p(1, 1), p(1, 2), p(2, 2), r.z.x(),
      r.z.y(), r.truth.x, r.truth.y, r.truth.psi);
  }
  return out;
}

inline std::string mpc_csv(std::span<const MpcRecord> rows)
{
  std::string out(kMpcHeader);
  out += '\n';
  for (const auto & r : rows) {
    const MpcState & x = r.x0;
    put_row(
      out, r.t, x.px, x.py, x.v, x.cos_psi, x.sin_psi, x.delta, r.u0.accel, r.u0.steer_rate, r.ref_s, r.cost,
      r.kkt, r.max_slack, r.iterations, std::string_view(to_string(r.status)));
  }
  return out;
}

inline std::string commands_csv(std::span<const CommandRecord> rows)
{
  std::string out(kCommandHeader);
  out += '\n';
  for (const auto & r : rows) {
    put_row(out, r.t, r.k, r.tau, r.v_cmd, r.delta_cmd, r.pred_x, r.pred_y, r.ref_x, r.ref_y);
  }
  return out;
}

/// Data rows of a CSV text after checking the header.
inline std::vector<std::vector<std::string_view>> table(std::string_view text, std::string_view header)
{
  std::vector<std::vector<std::string_view>> rows;
  const std::size_t columns = split(header).size();
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != header) throw Error(ErrorKind::Io, "unexpected CSV header '" + std::string(line) + "'");
      continue;
    }
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != columns) {
      throw Error(ErrorKind::Io, "line " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                                   " columns, got " + std::to_string(cells.size()));
    }
    rows.push_back(std::move(cells));
  }
  if (line_no == 0) throw Error(ErrorKind::Io, "empty CSV");
  return rows;
}

inline std::vector<PlantRecord> parse_plant_csv(std::string_view text)
{
  std::vector<PlantRecord> out;
  for (const auto & c : table(text, kPlantHeader)) {
    PlantRecord r;
    r.t = parse_double(c[0]);
    r.state = {parse_double(c[1]), parse_double(c[2]), parse_double(c[3]), parse_double(c[4]), parse_double(c[5])};
    r.front_x = parse_double(c[6]);
    r.front_y = parse_double(c[7]);
    r.v_cmd = parse_double(c[8]);
    r.delta_cmd = parse_double(c[9]);
    r.roll_cmd = parse_double(c[10]);
    out.push_back(r);
  }
  return out;
}

inline std::vector<EkfRecord> parse_ekf_csv(std::string_view text)
{
  std::vector<EkfRecord> out;
  for (const auto & c : table(text, kEkfHeader)) {
    EkfRecord r;
    r.t = parse_double(c[0]);
    r.mean = {parse_double(c[1]), parse_double(c[2]), parse_double(c[3])};
    const double xx = parse_double(c[4]), xy = parse_double(c[5]), xp = parse_double(c[6]);
    const double yy = parse_double(c[7]), yp = parse_double(c[8]), pp = parse_double(c[9]);
    r.cov << xx, xy, xp, xy, yy, yp, xp, yp, pp;
    r.z = {parse_double(c[10]), parse_double(c[11])};
    r.truth = {parse_double(c[12]), parse_double(c[13]), parse_double(c[14])};
    out.push_back(r);
  }
  return out;
}

inline std::vector<MpcRecord> parse_mpc_csv(std::string_view text)
{
  std::vector<MpcRecord> out;
  for (const auto & c : table(text, kMpcHeader)) {
    MpcRecord r;
    r.t = parse_double(c[0]);
    r.x0 = {parse_double(c[1]), parse_double(c[2]), parse_double(c[3]),
            parse_double(c[4]), parse_double(c[5]), parse_double(c[6])};
    r.u0 = {parse_double(c[7]), parse_double(c[8])};
    r.ref_s = parse_double(c[9]);
    r.cost = parse_double(c[10]);
    r.kkt = parse_double(c[11]);
    r.max_slack = parse_double(c[12]);
    r.iterations = parse_int(c[13]);
    r.status = parse_status(c[14]);
    out.push_back(r);
  }
  return out;
}

inline std::vector<CommandRecord> parse_commands_csv(std::string_view text)
{
  std::vector<CommandRecord> out;
  for (const auto & c : table(text, kCommandHeader)) {
    out.push_back({parse_double(c[0]), parse_int(c[1]), parse_double(c[2]), parse_double(c[3]),
                   parse_double(c[4]), parse_double(c[5]), parse_double(c[6]), parse_double(c[7]),
                   parse_double(c[8])});
  }
  return out;
}

inline void write_text(const std::filesystem::path & file, std::string_view text)
{
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + file.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed for " + file.string());
}

inline std::string read_text(const std::filesystem::path & file)
{
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::ordered_json metrics_json(const RunMetrics & m, const RunLog & log)
{
  nlohmann::ordered_json j;
  j["status"] = to_string(log.status);
  j["completed"] = m.completed;
  j["completion_time_s"] = m.completion_time;
  j["max_cross_track_m"] = m.max_cross_track;
  j["rms_cross_track_m"] = m.rms_cross_track;
  j["min_sdf_front"] = m.min_sdf_front;
  j["min_sdf_rear"] = m.min_sdf_rear;
  j["max_v"] = m.max_v;
  j["max_curve_excess"] = m.max_curve_excess;
  j["max_roll_rate_cmd"] = m.max_roll_rate;
  j["ekf_rmse_m"] = m.ekf_rmse;
  j["gnss_rmse_m"] = m.gnss_rmse;
  j["heading_error_after_turn_rad"] = m.heading_error_after_turn;
  j["min_cov_eigenvalue"] = m.min_cov_eigenvalue;
  j["stale_fixes"] = log.stale_fixes;
  j["mpc_steps"] = m.mpc_steps;
  j["max_sqp_iterations"] = m.max_iterations;
  j["max_iter_steps"] = m.max_iter_steps;
  j["max_slack"] = m.max_slack;
  j["mean_solve_time_s"] = m.mean_solve_time;
  j["p99_solve_time_s"] = m.p99_solve_time;
  j["solve_times_s"] = log.solve_seconds;
  return j;
}

/// Writes plant.csv, ekf.csv, mpc.csv, commands.csv and metrics.json into `dir`.
inline void write_run(const std::filesystem::path & dir, const RunLog & log, const RunMetrics & m)
{
  std::filesystem::create_directories(dir);
  write_text(dir / "plant.csv", plant_csv(log.plant));
  write_text(dir / "ekf.csv", ekf_csv(log.ekf));
  write_text(dir / "mpc.csv", mpc_csv(log.mpc));
  write_text(dir / "commands.csv", commands_csv(log.commands));
  write_text(dir / "metrics.json", metrics_json(m, log).dump(2) + "\n");
}

}  // namespace scootnav::io

#endif  // SCOOTNAV_IO_HPP
