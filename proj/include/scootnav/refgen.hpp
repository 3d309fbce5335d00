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

#ifndef SCOOTNAV_REFGEN_HPP
#define SCOOTNAV_REFGEN_HPP

#include "scootnav/localization.hpp"
#include "scootnav/path.hpp"
#include "scootnav/vehicle.hpp"

#include <cmath>
#include <vector>

namespace scootnav
{

struct HorizonParams
{
  double v_max = 0.7;             // m/s
  double f_mpc = 8.0;             // Hz
  double horizon_length_m = 6.0;  // T = horizon_length_m / v_max
  double lookahead_factor = 0.9;  // d = factor * v_max * T, also the reference speed factor

  void validate() const
  {
    if (!(v_max > 0.0 && f_mpc > 0.0 && horizon_length_m > 0.0 && lookahead_factor > 0.0)) {
      throw Error(ErrorKind::InvalidParams, "horizon parameters must be positive");
    }
    if (horizon_steps() < 1) {
      throw Error(ErrorKind::InvalidParams, "horizon shorter than one control period");
    }
  }

  double horizon_time() const { return horizon_length_m / v_max; }
  // floor keeps the realized horizon within T; the epsilon absorbs products
  // like 6 / 0.75 * 8 landing just below an integer.
  int horizon_steps() const { return static_cast<int>(std::floor(horizon_time() * f_mpc + 1e-9)); }
  double lookahead() const { return lookahead_factor * v_max * horizon_time(); }
  double reference_speed() const { return lookahead_factor * v_max; }
  double step() const { return 1.0 / f_mpc; }
};

struct Horizon
{
  double t = 0.0;  // s
  int n = 0;
  double d = 0.0;  // m
};

inline Horizon horizon(const HorizonParams & p)
{
  return {p.horizon_time(), p.horizon_steps(), p.lookahead()};
}

struct RefTrajectory
{
  std::vector<MpcState> states;  // N + 1
  std::vector<MpcInput> inputs;  // N, identically zero
  std::vector<double> arc;       // clamped arc length of each reference state
  double t = 0.0;

  int horizon() const { return static_cast<int>(inputs.size()); }
};

/// Local reference: project the front axle, then resample the next d meters
/// of path into N equal pieces. Past the final waypoint the reference parks
/// there with zero speed.
inline RefTrajectory build_reference(
  const Path & path, const EkfBelief & estimate, const HorizonParams & params,
  const VehicleParams & vehicle, double t = 0.0)
{
  const int n = params.horizon_steps();
  const double d = params.lookahead();
  const AxlePose front = sensor_to_front(estimate.mean, vehicle);
  const double s0 = project(Point2(front.x, front.y), path).s;
  const double total = path.total_length();

  RefTrajectory ref;
  ref.t = t;
  ref.states.reserve(n + 1);
  ref.arc.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double s_raw = s0 + k * d / n;
    const double s = std::min(s_raw, total);
    const PathSample smp = sample(path, s);
    MpcState x;
    x.px = smp.point.x();
    x.py = smp.point.y();
    x.v = s_raw >= total ? 0.0 : params.reference_speed();
    x.cos_psi = std::cos(smp.heading);
    x.sin_psi = std::sin(smp.heading);
    x.delta = 0.0;
    ref.states.push_back(x);
    ref.arc.push_back(s);
  }
  ref.inputs.assign(n, MpcInput{});
  return ref;
}

}  // namespace scootnav

#endif  // SCOOTNAV_REFGEN_HPP
