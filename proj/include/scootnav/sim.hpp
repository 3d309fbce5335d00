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

#ifndef SCOOTNAV_SIM_HPP
#define SCOOTNAV_SIM_HPP

#include "scootnav/error.hpp"
#include "scootnav/localization.hpp"
#include "scootnav/nmpc.hpp"
#include "scootnav/path.hpp"
#include "scootnav/refgen.hpp"
#include "scootnav/vehicle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace scootnav
{

/// Ground truth. Pose is the rear axle.
struct PlantState
{
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
  double v = 0.0;
  double delta = 0.0;
};

struct SensorConfig
{
  double gnss_rate = 10.0;      // Hz
  double gnss_sigma = 0.05;     // m
  bool gnss_reports_r = true;   // otherwise fixes carry a fixed nominal covariance
  double nominal_sigma = 0.1;   // m, used when gnss_reports_r is false
  double encoder_rate = 100.0;  // Hz
  double encoder_v_sigma = 0.005;
  double encoder_delta_sigma = 0.002;
  std::uint64_t seed = 1;

  void validate() const
  {
    if (!(gnss_rate > 0.0 && encoder_rate > 0.0)) {
      throw Error(ErrorKind::InvalidParams, "sensor rates must be positive");
    }
    if (!(gnss_sigma >= 0.0 && nominal_sigma > 0.0 && encoder_v_sigma >= 0.0 && encoder_delta_sigma >= 0.0)) {
      throw Error(ErrorKind::InvalidParams, "sensor noise levels must be nonnegative");
    }
  }
};

struct ActuatorConfig
{
  double velocity_tau = 0.3;  // s, first-order lag
  double steer_rate = 0.5;    // rad/s
  double delay = 0.05;        // s

  void validate() const
  {
    if (!(velocity_tau >= 0.0 && steer_rate > 0.0 && delay >= 0.0)) {
      throw Error(ErrorKind::InvalidParams, "actuator time constant, rate limit and delay must be nonnegative");
    }
  }
};

/// Optional perturbations for robustness runs. All off by default.
struct DisturbanceConfig
{
  double velocity_bias = 0.0;   // m/s added to the tracked speed
  double lateral_sigma = 0.0;   // m per sqrt(s), random walk normal to the heading
};

struct ScenarioConfig
{
  Path path = build_path({Point2(0, 0), Point2(10, 0)}, 0.75);
  VehicleParams vehicle;
  HorizonParams horizon;
  OcpWeights weights;
  OcpLimits limits;
  SensorConfig sensors;
  ActuatorConfig actuators;
  DisturbanceConfig disturbance;
  ProcessNoise process_noise;
  SqpOptions sqp;
  double time_limit = 120.0;  // s
  double plant_rate = 200.0;  // Hz
  double heading_prior_sigma = 0.1;  // rad, vehicle parked along the first segment
  // Initial speed and steering of each solve: the previous command profile
  // (continuous re-planning) or the encoder reading.
  bool anchor_on_commands = true;

  void validate() const
  {
    vehicle.validate();
    horizon.validate();
    weights.validate();
    limits.validate();
    sensors.validate();
    actuators.validate();
    if (horizon.v_max != limits.v_max) {
      throw Error(ErrorKind::InvalidParams, "horizon and limits disagree on v_max");
    }
    if (!(time_limit > 0.0 && plant_rate > 0.0 && heading_prior_sigma > 0.0)) {
      throw Error(ErrorKind::InvalidParams, "time limit, plant rate and heading prior must be positive");
    }
    for (const double rate : {sensors.gnss_rate, sensors.encoder_rate, horizon.f_mpc}) {
      ticks(rate);
    }
  }

  /// Plant steps per period of a task running at `rate`; must be a whole number.
  int ticks(double rate) const
  {
    const double r = plant_rate / rate;
    const double n = std::round(r);
    if (n < 1.0 || std::abs(r - n) > 1e-9) {
      throw Error(ErrorKind::InvalidParams, "task rates must divide the plant rate");
    }
    return static_cast<int>(n);
  }
};

/// Command history seen by the actuators: each profile takes over at its start time.
class CommandBuffer
{
public:
  void push(CommandProfile p)
  {
    profiles_.push_back(std::move(p));
    if (profiles_.size() > 3) profiles_.erase(profiles_.begin());
  }

  bool empty() const { return profiles_.empty(); }

  /// Value of the newest profile that had started by `tau`; holds the initial
  /// state if none had.
  CommandProfile::Value at(double tau, const CommandProfile::Value & fallback) const
  {
    for (auto it = profiles_.rbegin(); it != profiles_.rend(); ++it) {
      if (it->t0 <= tau + 1e-12) return it->at(tau);
    }
    return fallback;
  }

private:
  std::vector<CommandProfile> profiles_;
};

/// One plant step: actuators move toward the delayed command, then the
/// rear-axle kinematics are integrated with RK4 using linearly varying v and delta.
inline PlantState step_plant(
  const PlantState & s, const CommandProfile::Value & target, double dt, const ActuatorConfig & act,
  const OcpLimits & limits, const VehicleParams & params, double velocity_bias = 0.0)
{
  PlantState n = s;
  const double keep = act.velocity_tau > 0.0 ? std::exp(-dt / act.velocity_tau) : 0.0;
  n.v = std::max(0.0, target.v + (s.v - target.v) * keep + velocity_bias * (1.0 - keep));
  const double max_move = act.steer_rate * dt;
  n.delta = s.delta + std::clamp(target.delta - s.delta, -max_move, max_move);
  n.delta = std::clamp(n.delta, -limits.delta_max, limits.delta_max);

  const auto f = [&](const Eigen::Vector3d & q, double frac) {
    const double v = s.v + frac * (n.v - s.v);
    const double d = s.delta + frac * (n.delta - s.delta);
    return Eigen::Vector3d(v * std::cos(q(2)), v * std::sin(q(2)), v * std::tan(d) / params.wheelbase);
  };
  const Eigen::Vector3d q0(s.x, s.y, s.psi);
  const Eigen::Vector3d k1 = f(q0, 0.0);
  const Eigen::Vector3d k2 = f(q0 + 0.5 * dt * k1, 0.5);
  const Eigen::Vector3d k3 = f(q0 + 0.5 * dt * k2, 0.5);
  const Eigen::Vector3d k4 = f(q0 + dt * k3, 1.0);
  const Eigen::Vector3d q = q0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  n.x = q(0);
  n.y = q(1);
  n.psi = q(2);
  return n;
}

inline EkfState plant_sensor_point(const PlantState & s, const VehicleParams & p)
{
  return {s.x + p.rear_to_sensor * std::cos(s.psi), s.y + p.rear_to_sensor * std::sin(s.psi), s.psi};
}

inline Point2 plant_front(const PlantState & s, const VehicleParams & p)
{
  return {s.x + p.wheelbase * std::cos(s.psi), s.y + p.wheelbase * std::sin(s.psi)};
}

inline GnssFix gnss_measure(
  const PlantState & s, double t, const SensorConfig & cfg, const VehicleParams & params,
  std::mt19937_64 & rng)
{
  const EkfState p = plant_sensor_point(s, params);
  GnssFix fix;
  fix.stamp = t;
  fix.z = Eigen::Vector2d(p.x, p.y);
  if (cfg.gnss_sigma > 0.0) {
    std::normal_distribution<double> nd(0.0, cfg.gnss_sigma);
    fix.z.x() += nd(rng);
    fix.z.y() += nd(rng);
  }
  const double sigma = cfg.gnss_reports_r ? cfg.gnss_sigma : cfg.nominal_sigma;
  // A noiseless sensor still reports a tiny covariance so the update stays invertible.
  const double var = std::max(sigma * sigma, 1e-10);
  fix.r = Eigen::Matrix2d::Identity() * var;
  return fix;
}

inline EncoderSample encoder_measure(
  const PlantState & s, double t, const SensorConfig & cfg, std::mt19937_64 & rng)
{
  EncoderSample e{s.v, s.delta, t};
  if (cfg.encoder_v_sigma > 0.0) e.v += std::normal_distribution<double>(0.0, cfg.encoder_v_sigma)(rng);
  if (cfg.encoder_delta_sigma > 0.0) {
    e.delta += std::normal_distribution<double>(0.0, cfg.encoder_delta_sigma)(rng);
  }
  return e;
}

struct PlantRecord
{
  double t = 0.0;
  PlantState state;
  double front_x = 0.0;
  double front_y = 0.0;
  double v_cmd = 0.0;  // actuator targets at this instant (after the delay)
  double delta_cmd = 0.0;
  double roll_cmd = 0.0;  // roll set point of the applied commands
};

struct EkfRecord
{
  double t = 0.0;
  EkfState mean;
  Mat3 cov = Mat3::Zero();
  Eigen::Vector2d z = Eigen::Vector2d::Zero();
  EkfState truth;  // sensor point and heading
};

struct MpcRecord
{
  double t = 0.0;
  MpcState x0;
  MpcInput u0;
  double ref_s = 0.0;
  double cost = 0.0;
  double kkt = 0.0;
  double max_slack = 0.0;
  int iterations = 0;
  SqpStatus status = SqpStatus::Converged;
};

struct CommandRecord
{
  double t = 0.0;  // control step
  int k = 0;
  double tau = 0.0;
  double v_cmd = 0.0;
  double delta_cmd = 0.0;
  double pred_x = 0.0;  // predicted front axle
  double pred_y = 0.0;
  double ref_x = 0.0;
  double ref_y = 0.0;
};

enum class RunStatus { Completed, TimeLimit, SolverStalled };

inline std::string to_string(RunStatus s)
{
  switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::TimeLimit: return "time_limit";
    case RunStatus::SolverStalled: return "solver_stalled";
  }
  return "unknown";
}

struct RunLog
{
  std::vector<PlantRecord> plant;
  std::vector<EkfRecord> ekf;
  std::vector<MpcRecord> mpc;
  std::vector<CommandRecord> commands;
  std::vector<double> solve_seconds;  // wall time, kept apart from the reproducible records
  RunStatus status = RunStatus::TimeLimit;
  double end_time = 0.0;
  std::size_t stale_fixes = 0;
};

/// Initial pose: rear axle on the first waypoint, aligned with the first segment.
inline PlantState start_state(const Path & path)
{
  const Segment & s0 = path.segments().front();
  return {s0.a.x(), s0.a.y(), s0.heading(), 0.0, 0.0};
}

inline bool run_finished(const PlantState & s, const Path & path, const VehicleParams & p)
{
  const double s_front = project(plant_front(s, p), path).s;
  return path.total_length() - s_front <= 0.2 && s.v < 0.05;
}

/// Fixed-step closed loop: 200 Hz plant, encoder, GNSS + EKF, and MPC tasks at
/// integer tick multiples. Within one tick sensors run first, then the
/// controller, then the plant advances.
inline RunLog run_closed_loop(const ScenarioConfig & cfg)
{
  cfg.validate();
  const double dt = 1.0 / cfg.plant_rate;
  const int gnss_every = cfg.ticks(cfg.sensors.gnss_rate);
  const int enc_every = cfg.ticks(cfg.sensors.encoder_rate);
  const int mpc_every = cfg.ticks(cfg.horizon.f_mpc);
  const auto last_tick = static_cast<long>(std::floor(cfg.time_limit * cfg.plant_rate + 1e-9));

  std::mt19937_64 rng(cfg.sensors.seed);
  RunLog log;
  PlantState plant = start_state(cfg.path);
  Ekf ekf(cfg.vehicle, cfg.process_noise);
  SqpSolver solver(cfg.sqp);
  CommandBuffer commands;
  std::optional<OcpSolution> previous;
  EncoderSample encoder{0.0, 0.0, 0.0};
  int stalled = 0;

  for (long tick = 0;; ++tick) {
    const double t = static_cast<double>(tick) * dt;

    if (tick % enc_every == 0) {
      ekf.predict_to(t);
      encoder = encoder_measure(plant, t, cfg.sensors, rng);
      ekf.set_encoder(encoder);
    }
    if (tick % gnss_every == 0) {
      const GnssFix fix = gnss_measure(plant, t, cfg.sensors, cfg.vehicle, rng);
      if (!ekf.initialized()) {
        ekf.reset(initialize_with_heading(fix, cfg.path.segments().front().heading(), cfg.heading_prior_sigma));
      } else if (!ekf.process_fix(fix)) {
        ++log.stale_fixes;
      }
      const EkfBelief & b = ekf.belief();
      log.ekf.push_back({t, b.mean, b.cov, fix.z, plant_sensor_point(plant, cfg.vehicle)});
    }
    if (tick % mpc_every == 0 && ekf.initialized()) {
      // Latest belief carried to the control instant with the held encoder sample.
      EkfBelief b = ekf.belief();
      if (t - b.stamp > 1e-12) b = predict(b, encoder, t - b.stamp, cfg.process_noise, cfg.vehicle);
      const RefTrajectory ref = build_reference(cfg.path, b, cfg.horizon, cfg.vehicle, t);
      const AxlePose front = sensor_to_front(b.mean, cfg.vehicle);
      const double heading = b.mean.psi;
      CommandProfile::Value anchor{encoder.v, encoder.delta};
      if (cfg.anchor_on_commands && !commands.empty()) anchor = commands.at(t, anchor);
      const MpcState x0{front.x, front.y, anchor.v, std::cos(heading), std::sin(heading),
                        std::clamp(anchor.delta, -cfg.limits.delta_max, cfg.limits.delta_max)};
      const OcpProblem problem =
        assemble_ocp(x0, ref, cfg.path, cfg.weights, cfg.limits, cfg.vehicle, cfg.horizon.f_mpc);
      const auto start = std::chrono::steady_clock::now();
      OcpSolution sol = solver.solve(problem, previous ? &*previous : nullptr);
      log.solve_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

      log.mpc.push_back({t, problem.x0, sol.inputs.front(), ref.arc.front(), sol.cost, sol.kkt_residual,
                         sol.slacks.max(), sol.iterations, sol.status});
      const CommandProfile prof = synthesize_commands(sol, t, cfg.horizon.f_mpc);
      for (std::size_t k = 0; k < prof.v.size(); ++k) {
        log.commands.push_back({t, static_cast<int>(k), t + prof.dt * static_cast<double>(k), prof.v[k],
                                prof.delta[k], sol.states[k].px, sol.states[k].py, ref.states[k].px,
                                ref.states[k].py});
      }
      if (sol.status == SqpStatus::InfeasibleQp) {
        previous.reset();  // keep the previous commands and cold start next time
      } else {
        commands.push(prof);
        previous = std::move(sol);
      }
      stalled = (log.mpc.back().status == SqpStatus::MaxIter && log.mpc.back().max_slack > 0.1) ? stalled + 1 : 0;
      if (stalled >= 3) {
        log.status = RunStatus::SolverStalled;
        log.end_time = t;
        break;
      }
    }

    // Commands reaching the actuators now; the balancing loop leans for these.
    const CommandProfile::Value applied = commands.at(t - cfg.actuators.delay, {0.0, plant.delta});
    const Point2 front = plant_front(plant, cfg.vehicle);
    log.plant.push_back({t, plant, front.x(), front.y(), applied.v, applied.delta,
                         roll_setpoint(applied.v, applied.delta, cfg.vehicle)});

    if (tick > 0 && run_finished(plant, cfg.path, cfg.vehicle)) {
      log.status = RunStatus::Completed;
      log.end_time = t;
      break;
    }
    if (tick >= last_tick) {
      log.status = RunStatus::TimeLimit;
      log.end_time = t;
      break;
    }

    const CommandProfile::Value next = commands.at(t + dt - cfg.actuators.delay, {0.0, plant.delta});
    plant = step_plant(plant, next, dt, cfg.actuators, cfg.limits, cfg.vehicle, cfg.disturbance.velocity_bias);
    if (cfg.disturbance.lateral_sigma > 0.0) {
      const double d = std::normal_distribution<double>(0.0, cfg.disturbance.lateral_sigma * std::sqrt(dt))(rng);
      plant.x -= d * std::sin(plant.psi);
      plant.y += d * std::cos(plant.psi);
    }
  }
  log.stale_fixes = std::max(log.stale_fixes, ekf.stale_fixes());
  return log;
}

struct RunMetrics
{
  bool completed = false;
  double completion_time = 0.0;
  double max_cross_track = 0.0;
  double rms_cross_track = 0.0;
  double min_sdf_front = std::numeric_limits<double>::infinity();
  double min_sdf_rear = std::numeric_limits<double>::infinity();
  double max_v = 0.0;
  double max_curve_excess = 0.0;  // max(0, v - curve_speed_limit(delta))
  double max_roll_rate = 0.0;
  // Localization, over fixes after the burn-in.
  double ekf_rmse = 0.0;
  double gnss_rmse = 0.0;
  double heading_error_after_turn = 0.0;
  double min_cov_eigenvalue = std::numeric_limits<double>::infinity();
  // Solver.
  int mpc_steps = 0;
  int max_iterations = 0;
  double max_slack = 0.0;
  int max_iter_steps = 0;
  double mean_solve_time = 0.0;
  double p99_solve_time = 0.0;
};

/// Lateral offset from the path. Beyond either end the end segment is
/// extended, so running past the final waypoint is not counted as lateral.
inline double cross_track(const Point2 & p, const Path & path)
{
  const PathProjection pr = project(p, path);
  const bool before = pr.s <= 0.0, after = pr.s >= path.total_length();
  if (!before && !after) return pr.distance;
  const Segment & seg = before ? path.segments().front() : path.segments().back();
  const Point2 dir = (seg.b - seg.a) / seg.length();
  const Point2 d = p - seg.a;
  return std::abs(dir.x() * d.y() - dir.y() * d.x());
}

inline double wrap_angle(double a)
{
  return std::remainder(a, 2.0 * std::numbers::pi);
}

/// Audits a run against the truth. Heading error counts once the front axle
/// is 1.5 m past the first interior waypoint.
inline RunMetrics evaluate_run(
  const RunLog & log, const Path & path, const OcpLimits & limits, const VehicleParams & params,
  double burn_in = 5.0)
{
  RunMetrics m;
  m.completed = log.status == RunStatus::Completed;
  m.completion_time = log.end_time;
  double sq = 0.0;
  for (const auto & r : log.plant) {
    const Point2 front(r.front_x, r.front_y);
    const Point2 rear(r.state.x, r.state.y);
    const double ct = cross_track(front, path);
    m.max_cross_track = std::max(m.max_cross_track, ct);
    sq += ct * ct;
    m.min_sdf_front = std::min(m.min_sdf_front, path_sdf(front, path));
    m.min_sdf_rear = std::min(m.min_sdf_rear, path_sdf(rear, path));
    m.max_v = std::max(m.max_v, r.state.v);
    m.max_curve_excess = std::max(m.max_curve_excess, r.state.v - curve_speed_limit(r.state.delta, limits));
  }
  if (!log.plant.empty()) m.rms_cross_track = std::sqrt(sq / static_cast<double>(log.plant.size()));
  for (std::size_t i = 1; i < log.plant.size(); ++i) {
    const double h = log.plant[i].t - log.plant[i - 1].t;
    if (h > 0.0) {
      m.max_roll_rate = std::max(m.max_roll_rate, std::abs(log.plant[i].roll_cmd - log.plant[i - 1].roll_cmd) / h);
    }
  }

  const double turn_s = path.size() > 1 ? path.start_s(1) + 1.5 : std::numeric_limits<double>::infinity();
  double se = 0.0, sg = 0.0;
  int n = 0;
  for (const auto & r : log.ekf) {
    const Eigen::SelfAdjointEigenSolver<Mat3> eig(r.cov, Eigen::EigenvaluesOnly);
    m.min_cov_eigenvalue = std::min(m.min_cov_eigenvalue, eig.eigenvalues()(0));
    if (r.t >= burn_in) {
      se += std::pow(r.mean.x - r.truth.x, 2) + std::pow(r.mean.y - r.truth.y, 2);
      sg += (r.z - Eigen::Vector2d(r.truth.x, r.truth.y)).squaredNorm();
      ++n;
    }
    const double arm = params.wheelbase - params.rear_to_sensor;
    const Point2 front(r.truth.x + arm * std::cos(r.truth.psi), r.truth.y + arm * std::sin(r.truth.psi));
    if (project(front, path).s >= turn_s) {
      m.heading_error_after_turn =
        std::max(m.heading_error_after_turn, std::abs(wrap_angle(r.mean.psi - r.truth.psi)));
    }
  }
  if (n > 0) {
    m.ekf_rmse = std::sqrt(se / n);
    m.gnss_rmse = std::sqrt(sg / n);
  }

  m.mpc_steps = static_cast<int>(log.mpc.size());
  for (const auto & r : log.mpc) {
    m.max_iterations = std::max(m.max_iterations, r.iterations);
    m.max_slack = std::max(m.max_slack, r.max_slack);
    if (r.status == SqpStatus::MaxIter) ++m.max_iter_steps;
  }
  if (!log.solve_seconds.empty()) {
    std::vector<double> s = log.solve_seconds;
    double sum = 0.0;
    for (const double v : s) sum += v;
    m.mean_solve_time = sum / static_cast<double>(s.size());
    std::sort(s.begin(), s.end());
    const auto idx = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(s.size()))) - 1;
    m.p99_solve_time = s[std::min(idx, s.size() - 1)];
  }
  return m;
}

}  // namespace scootnav

#endif  // SCOOTNAV_SIM_HPP
