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

#ifndef SCOOTNAV_REPLAY_HPP
#define SCOOTNAV_REPLAY_HPP

#include "scootnav/error.hpp"
#include "scootnav/io.hpp"
#include "scootnav/localization.hpp"
#include "scootnav/sim.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace scootnav
{

enum class SensorKind { Gnss, Encoder };

/// One row of a recorded sensor log. Unused fields are NaN.
struct SensorRow
{
  double t = 0.0;
  SensorKind kind = SensorKind::Gnss;
  double z_e = std::numeric_limits<double>::quiet_NaN();
  double z_n = std::numeric_limits<double>::quiet_NaN();
  double r_var = std::numeric_limits<double>::quiet_NaN();
  double v = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::quiet_NaN();
};

inline constexpr std::string_view kSensorLogHeader = "t_s,kind,z_e,z_n,r_var,v,delta";

namespace detail
{

inline double optional_cell(std::string_view s)
{
  return s.empty() ? std::numeric_limits<double>::quiet_NaN() : io::parse_double(s);
}

}  // namespace detail

/// Columns t_s, kind (gnss|enc), z_e, z_n, r_var, v, delta; unused cells empty.
inline std::vector<SensorRow> parse_sensor_log(std::string_view text)
{
  std::vector<SensorRow> rows;
  std::size_t line = 1;
  for (const auto & c : io::table(text, kSensorLogHeader)) {
    ++line;
    SensorRow r;
    r.t = io::parse_double(c[0]);
    if (c[1] == "gnss") {
      r.kind = SensorKind::Gnss;
      r.z_e = io::parse_double(c[2]);
      r.z_n = io::parse_double(c[3]);
      r.r_var = detail::optional_cell(c[4]);
    } else if (c[1] == "enc") {
      r.kind = SensorKind::Encoder;
      r.v = io::parse_double(c[5]);
      r.delta = io::parse_double(c[6]);
    } else {
      throw Error(ErrorKind::Io, "unknown sensor kind '" + std::string(c[1]) + "'");
    }
    if (!std::isfinite(r.t)) throw Error(ErrorKind::Io, "non-finite timestamp");
    rows.push_back(r);
  }
  return rows;
}

inline std::string sensor_log_csv(const std::vector<SensorRow> & rows)
{
  std::string out(kSensorLogHeader);
  out += '\n';
  const auto cell = [&out](double v) {
    out += ',';
    if (std::isfinite(v)) io::put(out, v);
  };
  for (const auto & r : rows) {
    io::put(out, r.t);
    out += r.kind == SensorKind::Gnss ? ",gnss" : ",enc";
    cell(r.z_e);
    cell(r.z_n);
    cell(r.r_var);
    cell(r.v);
    cell(r.delta);
    out += '\n';
  }
  return out;
}

struct ReplayResult
{
  std::vector<EkfRecord> ekf;  // truth columns are NaN
  std::size_t skipped = 0;     // rows older than their predecessor
  std::size_t fixes_before_init = 0;
};

/// Localization only. The filter starts once the GNSS fixes span 0.2 m, with
/// the heading taken from their displacement.
inline ReplayResult replay_sensor_log(
  const std::vector<SensorRow> & rows, const VehicleParams & params, const ProcessNoise & noise,
  double nominal_sigma)
{
  if (rows.empty()) throw Error(ErrorKind::Io, "sensor log has no rows");
  ReplayResult out;
  Ekf ekf(params, noise);
  std::vector<GnssFix> pending;
  double last_t = -std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const SensorRow & r : rows) {
    if (r.t < last_t) {
      ++out.skipped;
      continue;
    }
    last_t = r.t;
    if (r.kind == SensorKind::Encoder) {
      ekf.predict_to(r.t);
      ekf.set_encoder({r.v, r.delta, r.t});
      continue;
    }
    GnssFix fix;
    fix.stamp = r.t;
    fix.z = {r.z_e, r.z_n};
    const double var = std::isfinite(r.r_var) ? r.r_var : nominal_sigma * nominal_sigma;
    fix.r = Eigen::Matrix2d::Identity() * var;
    if (!ekf.initialized()) {
      pending.push_back(fix);
      if ((fix.z - pending.front().z).norm() < 0.2) continue;
      ekf.reset(initialize(pending));
      out.fixes_before_init = pending.size();
    } else {
      ekf.process_fix(fix);
    }
    const EkfBelief & b = ekf.belief();
    out.ekf.push_back({r.t, b.mean, b.cov, fix.z, {nan, nan, nan}});
  }
  if (!ekf.initialized()) {
    throw Error(ErrorKind::InsufficientBaseline, "GNSS fixes never spread over 0.2 m");
  }
  return out;
}

}  // namespace scootnav

#endif  // SCOOTNAV_REPLAY_HPP
