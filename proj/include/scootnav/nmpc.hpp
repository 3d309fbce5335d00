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

#ifndef SCOOTNAV_NMPC_HPP
#define SCOOTNAV_NMPC_HPP

#include "scootnav/error.hpp"
#include "scootnav/path.hpp"
#include "scootnav/qp.hpp"
#include "scootnav/refgen.hpp"
#include "scootnav/vehicle.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace scootnav
{

struct OcpWeights
{
  Vec6 q = (Vec6() << 0.1, 0.1, 0.04, 0.15, 0.15, 0.0025).finished();
  Eigen::Vector2d r{0.01, 0.001};
  Vec6 p = q;  // terminal

  void validate() const
  {
    if (!((q.array() > 0.0).all() && (r.array() > 0.0).all() && (p.array() > 0.0).all())) {
      throw Error(ErrorKind::InvalidParams, "cost weights must be strictly positive");
    }
  }

  OcpWeights scaled(double c) const { return {c * q, c * r, c * p}; }
};

struct OcpLimits
{
  double v_max = 0.7;             // m/s
  double delta_max = 0.65;        // rad
  double steer_rate_max = 0.4;    // rad/s
  double a_min = -1.0;            // m/s^2
  double a_max = 0.7;             // m/s^2
  double roll_rate_max = 0.0175;  // rad/s (1 deg/s)
  double v_curve = 0.4;           // speed limit at full steering lock
  double velocity_lag = 0.0;      // s, speed-loop lag covered by the curve limit

  /// Chosen so that the curve speed limit equals v_curve at |delta| = delta_max.
  double mu() const { return (v_max - v_curve) / (v_curve * delta_max); }

  void validate() const
  {
    if (!(v_max > 0.0 && delta_max > 0.0 && delta_max < 1.5 && steer_rate_max > 0.0 &&
          roll_rate_max > 0.0)) {
      throw Error(ErrorKind::InvalidParams, "limits v_max, delta_max, steer_rate_max, roll_rate_max must be positive");
    }
    if (!(a_min < 0.0 && a_max > 0.0)) {
      throw Error(ErrorKind::InvalidParams, "acceleration limits must satisfy a_min < 0 < a_max");
    }
    if (!(velocity_lag >= 0.0)) throw Error(ErrorKind::InvalidParams, "velocity_lag must be nonnegative");
    if (!(v_curve > 0.0)) throw Error(ErrorKind::InvalidParams, "v_curve must be positive");
    if (v_curve > v_max) {
      throw Error(
        ErrorKind::InvalidParams,
        "v_curve must not exceed v_max (curve slowdown factor mu would be negative)");
    }
  }
};

/// Speed limit that shrinks with the steering magnitude.
inline double curve_speed_limit(double delta, const OcpLimits & limits)
{
  return limits.v_max / (1.0 + limits.mu() * std::abs(delta));
}

/// ||x - x_ref||_Q^2 + ||u - u_ref||_R^2
inline double stage_cost(
  const MpcState & x, const MpcInput & u, const MpcState & x_ref, const MpcInput & u_ref,
  const OcpWeights & w)
{
  const Vec6 dx = x.vec() - x_ref.vec();
  const Eigen::Vector2d du = u.vec() - u_ref.vec();
  return dx.dot(w.q.cwiseProduct(dx)) + du.dot(w.r.cwiseProduct(du));
}

inline double terminal_cost(const MpcState & x, const MpcState & x_ref, const OcpWeights & w)
{
  const Vec6 dx = x.vec() - x_ref.vec();
  return dx.dot(w.p.cwiseProduct(dx));
}

/// Discretized optimal control problem over one horizon.
struct OcpProblem
{
  MpcState x0;
  RefTrajectory ref;
  Path path;
  OcpWeights weights;
  OcpLimits limits;
  VehicleParams vehicle;
  double dt = 0.125;

  int horizon() const { return ref.horizon(); }
  int num_primal() const { return (horizon() + 1) * 6 + horizon() * 2; }

  // Soft inequality rows per stage: roll rate (two sides), curve speed (two
  // sides, then two more for the lagged speed), corridor front and rear. The
  // last stage has no inputs.
  static constexpr int kSoftRows = 8;
  static constexpr int kSoftRowsTerminal = 4;
  int num_slacks() const { return horizon() * kSoftRows + kSoftRowsTerminal; }
};

/// Builds the problem. The initial state's speed and steering are clamped into
/// their boxes because x(0) is fixed and measured values can sit slightly outside.
inline OcpProblem assemble_ocp(
  const MpcState & x0, const RefTrajectory & ref, const Path & path, const OcpWeights & weights,
  const OcpLimits & limits, const VehicleParams & vehicle, double f_mpc)
{
  if (ref.states.size() != ref.inputs.size() + 1 || ref.inputs.empty()) {
    throw Error(ErrorKind::DimensionMismatch, "reference needs N + 1 states and N inputs");
  }
  if (!x0.vec().allFinite()) throw Error(ErrorKind::NonFiniteState, "initial state is not finite");
  if (std::abs(x0.delta) > limits.delta_max + 1e-6) {
    throw Error(ErrorKind::InvalidParams, "initial steering angle outside its limit");
  }
  if (!(f_mpc > 0.0)) throw Error(ErrorKind::InvalidParams, "control rate must be positive");
  weights.validate();
  limits.validate();
  OcpProblem p{x0, ref, path, weights, limits, vehicle, 1.0 / f_mpc};
  p.x0.v = std::clamp(x0.v, 0.0, limits.v_max);
  p.x0.delta = std::clamp(x0.delta, -limits.delta_max, limits.delta_max);
  const double r = std::hypot(x0.cos_psi, x0.sin_psi);
  p.x0.cos_psi /= r;
  p.x0.sin_psi /= r;
  return p;
}

/// Nonlinear inequality values (feasible when >= 0) and Jacobians at one stage.
struct StageConstraints
{
  Eigen::VectorXd g;
  Eigen::MatrixXd gx;  // rows x 6
  Eigen::MatrixXd gu;  // rows x 2 (zero columns on the last stage)
};

inline Eigen::Vector2d rear_axle(const Vec6 & x, double wheelbase)
{
  return {x(0) - wheelbase * x(3), x(1) - wheelbase * x(4)};
}

inline StageConstraints stage_constraints(
  const OcpProblem & p, const Vec6 & x, const Eigen::Vector2d * u)
{
  const bool has_input = u != nullptr;
  const int rows = has_input ? OcpProblem::kSoftRows : OcpProblem::kSoftRowsTerminal;
  StageConstraints c{Eigen::VectorXd::Zero(rows), Eigen::MatrixXd::Zero(rows, 6),
                     Eigen::MatrixXd::Zero(rows, 2)};
  const double v = x(MpcState::kV), delta = x(MpcState::kDelta);
  int row = 0;
  if (has_input) {
    const double rate = roll_setpoint_rate(v, delta, (*u)(0), (*u)(1), p.vehicle);
    const Eigen::Vector4d grad = roll_setpoint_rate_gradient(v, delta, (*u)(0), (*u)(1), p.vehicle);
    const double b = p.limits.roll_rate_max;
    for (const double sign : {-1.0, 1.0}) {
      c.g(row) = b + sign * rate;
      c.gx(row, MpcState::kV) = sign * grad(0);
      c.gx(row, MpcState::kDelta) = sign * grad(1);
      c.gu(row, 0) = sign * grad(2);
      c.gu(row, 1) = sign * grad(3);
      ++row;
    }
  }
  // v (1 +- mu delta) <= v_max, equivalent to the curve limit for v >= 0. Input
  // stages repeat it at the end of the interval for v - velocity_lag * a, the
  // speed a lagging speed loop still carries after braking.
  const double mu = p.limits.mu();
  const double lag = p.limits.velocity_lag;
  for (const bool lagged : {false, true}) {
    if (lagged && !has_input) break;
    const double ve = lagged ? v + (p.dt - lag) * (*u)(0) : v;
    const double de = lagged ? delta + p.dt * (*u)(1) : delta;
    for (const double sign : {1.0, -1.0}) {
      const double f = 1.0 + sign * mu * de;
      c.g(row) = p.limits.v_max - ve * f;
      c.gx(row, MpcState::kV) = -f;
      c.gx(row, MpcState::kDelta) = -sign * mu * ve;
      if (lagged) {
        c.gu(row, 0) = -(p.dt - lag) * f;
        c.gu(row, 1) = -sign * mu * ve * p.dt;
      }
      ++row;
    }
  }
  const Eigen::Vector2d front(x(0), x(1));
  const auto sf = path_sdf_active(front, p.path);
  c.g(row) = sf.value;
  c.gx.block<1, 2>(row, 0) = segment_sdf_gradient(front, p.path.segments()[sf.seg_index]).transpose();
  ++row;
  const Eigen::Vector2d rear = rear_axle(x, p.vehicle.wheelbase);
  const auto sr = path_sdf_active(rear, p.path);
  const Eigen::Vector2d gr = segment_sdf_gradient(rear, p.path.segments()[sr.seg_index]);
  c.g(row) = sr.value;
  c.gx.block<1, 2>(row, 0) = gr.transpose();
  c.gx.block<1, 2>(row, 3) = -p.vehicle.wheelbase * gr.transpose();
  return c;
}

enum class SqpStatus { Converged, MaxIter, InfeasibleQp };

inline std::string to_string(SqpStatus s)
{
  switch (s) {
    case SqpStatus::Converged: return "converged";
    case SqpStatus::MaxIter: return "max_iter";
    case SqpStatus::InfeasibleQp: return "infeasible_qp";
  }
  return "unknown";
}

/// Largest violation per constraint family (0 when satisfied).
struct ConstraintSlacks
{
  double roll_rate = 0.0;
  double curve_speed = 0.0;
  double corridor_front = 0.0;
  double corridor_rear = 0.0;

  double max() const { return std::max({roll_rate, curve_speed, corridor_front, corridor_rear}); }
};

struct OcpSolution
{
  std::vector<MpcState> states;
  std::vector<MpcInput> inputs;
  ConstraintSlacks slacks;
  double cost = 0.0;       // tracking cost only
  double objective = 0.0;  // cost + slack penalty
  double kkt_residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  SqpStatus status = SqpStatus::MaxIter;
  // Merit before and after each accepted step, under the penalty used for that step.
  std::vector<std::pair<double, double>> merit_steps;
};

struct SqpOptions
{
  int max_iter = 30;
  double kkt_tol = 1e-5;
  double slack_penalty = 1e3;
  double backtrack = 0.5;
  double min_step = 1e-4;
  double armijo = 1e-4;
  qp::Options qp{1e-11, true, 60, 0.995};
};

namespace detail
{

struct Trajectory
{
  std::vector<Vec6> x;
  std::vector<Eigen::Vector2d> u;
};

inline Trajectory rollout(const OcpProblem & p, const Vec6 & x0, const std::vector<Eigen::Vector2d> & u)
{
  Trajectory t{{x0}, u};
  for (std::size_t k = 0; k < u.size(); ++k) {
    t.x.push_back(
      integrate(MpcState::from_vec(t.x.back()), MpcInput::from_vec(u[k]), p.dt, Integrator::Rk4, p.vehicle)
        .vec());
  }
  return t;
}

inline void clamp_boxes(const OcpProblem & p, Trajectory & t)
{
  const auto & lim = p.limits;
  for (std::size_t k = 1; k < t.x.size(); ++k) {
    t.x[k](MpcState::kV) = std::clamp(t.x[k](MpcState::kV), 0.0, lim.v_max);
    t.x[k](MpcState::kDelta) = std::clamp(t.x[k](MpcState::kDelta), -lim.delta_max, lim.delta_max);
  }
  for (auto & u : t.u) {
    u(0) = std::clamp(u(0), lim.a_min, lim.a_max);
    u(1) = std::clamp(u(1), -lim.steer_rate_max, lim.steer_rate_max);
  }
}

struct Evaluation
{
  double cost = 0.0;
  double violation = 0.0;  // sum of soft-constraint violations
  double defect = 0.0;     // L1 norm of dynamics defects
  ConstraintSlacks slacks;
};

inline Evaluation evaluate(const OcpProblem & p, const Trajectory & t)
{
  Evaluation e;
  const int n = p.horizon();
  for (int k = 0; k <= n; ++k) {
    const Eigen::Vector2d * u = k < n ? &t.u[k] : nullptr;
    const StageConstraints c = stage_constraints(p, t.x[k], u);
    const MpcState xs = MpcState::from_vec(t.x[k]);
    if (k < n) {
      e.cost += stage_cost(xs, MpcInput::from_vec(t.u[k]), p.ref.states[k], p.ref.inputs[k], p.weights);
      const Vec6 next = integrate(xs, MpcInput::from_vec(t.u[k]), p.dt, Integrator::Rk4, p.vehicle).vec();
      e.defect += (next - t.x[k + 1]).cwiseAbs().sum();
    } else {
      e.cost += terminal_cost(xs, p.ref.states[k], p.weights);
    }
    const Eigen::VectorXd viol = (-c.g).cwiseMax(0.0);
    e.violation += viol.sum();
    const int off = u ? 2 : 0;
    const int curve_rows = u ? 4 : 2;
    if (u) e.slacks.roll_rate = std::max({e.slacks.roll_rate, viol(0), viol(1)});
    e.slacks.curve_speed = std::max(e.slacks.curve_speed, viol.segment(off, curve_rows).maxCoeff());
    e.slacks.corridor_front = std::max(e.slacks.corridor_front, viol(off + curve_rows));
    e.slacks.corridor_rear = std::max(e.slacks.corridor_rear, viol(off + curve_rows + 1));
  }
  return e;
}

}  // namespace detail

/// Gauss-Newton SQP on the multiple-shooting transcription with L1-penalized
/// slacks on the nonlinear inequalities. Owns the QP workspace.
class SqpSolver
{
public:
  explicit SqpSolver(SqpOptions options = {}) : options_(options), qp_(options.qp) {}

  const SqpOptions & options() const { return options_; }

  OcpSolution solve(const OcpProblem & p, const OcpSolution * warm = nullptr)
  {
    const int n = p.horizon();
    detail::Trajectory z = initial_guess(p, warm);
    const double rho = options_.slack_penalty;
    double nu = 0.0;  // defect penalty, raised to dominate the costates

    OcpSolution out;
    std::optional<qp::Solution> last_qp;
    detail::Trajectory best = z;
    double best_merit = std::numeric_limits<double>::infinity();
    out.status = SqpStatus::MaxIter;

    for (int iter = 0;; ++iter) {
      const qp::Problem qp = linearize(p, z);
      const detail::Evaluation ev = detail::evaluate(p, z);
      const double merit = ev.cost + rho * ev.violation + nu * ev.defect;
      if (merit < best_merit) {
        best_merit = merit;
        best = z;
      }
      if (last_qp) {
        out.kkt_residual = kkt_at(qp, p, z, *last_qp);
        if (out.kkt_residual < options_.kkt_tol) {
          out.status = SqpStatus::Converged;
          break;
        }
      }
      if (iter == options_.max_iter) break;

      qp::Solution sol = qp_.solve(qp);
      ++out.iterations;
      if (sol.status == qp::Status::Failed) {
        out.status = SqpStatus::InfeasibleQp;
        break;
      }
      for (const auto & c : sol.costate) {
        if (c.size() > 0) nu = std::max(nu, 1.1 * c.cwiseAbs().maxCoeff());
      }
      const double merit0 = ev.cost + rho * ev.violation + nu * ev.defect;

      // Decrease predicted by the QP model of the merit function.
      double model = 0.0;
      for (int k = 0; k <= n; ++k) {
        const auto & st = qp.stages[k];
        model += st.q.dot(sol.x[k]) + 0.5 * sol.x[k].dot(st.Q * sol.x[k]) + st.r.dot(sol.w[k]) +
                 0.5 * sol.w[k].dot(st.R * sol.w[k]);
      }
      const double predicted = rho * ev.violation + nu * ev.defect - model;

      double alpha = 1.0;
      bool accepted = false;
      detail::Trajectory trial;
      double merit_trial = 0.0;
      while (alpha >= options_.min_step) {
        trial = step(z, sol, alpha);
        detail::clamp_boxes(p, trial);
        const detail::Evaluation et = detail::evaluate(p, trial);
        merit_trial = et.cost + rho * et.violation + nu * et.defect;
        if (merit_trial <= merit0 - options_.armijo * alpha * std::max(predicted, 0.0)) {
          accepted = true;
          break;
        }
        alpha *= options_.backtrack;
      }
      if (!accepted) break;  // stalled: keep the best iterate
      out.merit_steps.emplace_back(merit0, merit_trial);
      z = std::move(trial);
      last_qp = std::move(sol);
    }

    if (out.status != SqpStatus::Converged) z = best;
    finalize(p, z, out);
    return out;
  }

private:
  detail::Trajectory initial_guess(const OcpProblem & p, const OcpSolution * warm) const
  {
    const int n = p.horizon();
    const Vec6 x0 = p.x0.vec();
    if (warm && static_cast<int>(warm->inputs.size()) == n && n > 0) {
      detail::Trajectory t;
      for (int k = 0; k <= n; ++k) t.x.push_back(warm->states[std::min(k + 1, n)].vec());
      for (int k = 0; k < n; ++k) t.u.push_back(warm->inputs[std::min(k + 1, n - 1)].vec());
      t.x[0] = x0;
      detail::clamp_boxes(p, t);
      return t;
    }
    return detail::rollout(p, x0, std::vector<Eigen::Vector2d>(n, Eigen::Vector2d::Zero()));
  }

  // QP in the step (dx, du) plus absolute slacks s: stage variables w = [du; s].
  qp::Problem linearize(const OcpProblem & p, const detail::Trajectory & z) const
  {
    const int n = p.horizon();
    const auto & lim = p.limits;
    const double rho = options_.slack_penalty;
    qp::Problem qp;
    qp.x0 = Eigen::VectorXd::Zero(6);
    qp.stages.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
      const bool last = k == n;
      const int ns = last ? OcpProblem::kSoftRowsTerminal : OcpProblem::kSoftRows;
      const int nu = last ? 0 : 2;
      const int nw = nu + ns;
      const int box_x = k > 0 ? 4 : 0;
      const int box_u = last ? 0 : 4;
      const int rows = box_x + box_u + 2 * ns;
      qp::Stage st = qp::Stage::zeros(6, nw, rows, last ? -1 : 6);

      const Vec6 weight = last ? p.weights.p : p.weights.q;
      const Vec6 dx = z.x[k] - p.ref.states[k].vec();
      st.Q.diagonal() = 2.0 * weight;
      st.q = 2.0 * weight.cwiseProduct(dx);
      if (!last) {
        st.R.diagonal().head<2>() = 2.0 * p.weights.r;
        st.r.head<2>() = 2.0 * p.weights.r.cwiseProduct(z.u[k] - p.ref.inputs[k].vec());
      }
      st.r.tail(ns).setConstant(rho);

      if (!last) {
        const ShootingStep sh = rk4_with_sensitivities(z.x[k], z.u[k], p.dt, p.vehicle);
        st.A = sh.dx;
        st.B.leftCols<2>() = sh.du;
        st.c = sh.next - z.x[k + 1];
      }

      int row = 0;
      const auto bound = [&](bool on_state, int idx, double sign, double lo) {
        if (on_state) st.C(row, idx) = sign; else st.D(row, idx) = sign;
        st.lower(row) = lo;
        ++row;
      };
      if (box_x) {
        const double v = z.x[k](MpcState::kV), d = z.x[k](MpcState::kDelta);
        bound(true, MpcState::kV, 1.0, -v);
        bound(true, MpcState::kV, -1.0, v - lim.v_max);
        bound(true, MpcState::kDelta, 1.0, -lim.delta_max - d);
        bound(true, MpcState::kDelta, -1.0, d - lim.delta_max);
      }
      if (box_u) {
        const double a = z.u[k](0), r = z.u[k](1);
        bound(false, 0, 1.0, lim.a_min - a);
        bound(false, 0, -1.0, a - lim.a_max);
        bound(false, 1, 1.0, -lim.steer_rate_max - r);
        bound(false, 1, -1.0, r - lim.steer_rate_max);
      }
      const StageConstraints c = stage_constraints(p, z.x[k], last ? nullptr : &z.u[k]);
      for (int i = 0; i < ns; ++i) {
        st.C.row(row) = c.gx.row(i);
        if (nu) st.D.block(row, 0, 1, nu) = c.gu.row(i);
        st.D(row, nu + i) = 1.0;
        st.lower(row) = -c.g(i);
        ++row;
        st.D(row, nu + i) = 1.0;
        st.lower(row) = 0.0;
        ++row;
      }
      qp.stages.push_back(std::move(st));
    }
    return qp;
  }

  // NLP first-order residual at z, using multipliers from the previous QP.
  double kkt_at(
    const qp::Problem & qp, const OcpProblem & p, const detail::Trajectory & z,
    const qp::Solution & prev) const
  {
    const int n = p.horizon();
    std::vector<Eigen::VectorXd> x(n + 1), w(n + 1);
    for (int k = 0; k <= n; ++k) {
      const auto & st = qp.stages[k];
      x[k] = Eigen::VectorXd::Zero(6);
      w[k] = Eigen::VectorXd::Zero(st.nw());
      const int nu = k < n ? 2 : 0;
      const StageConstraints c = stage_constraints(p, z.x[k], k < n ? &z.u[k] : nullptr);
      w[k].tail(st.nw() - nu) = (-c.g).cwiseMax(0.0);
    }
    return qp::residuals(qp, x, w, prev.costate, prev.dual).max();
  }

  static detail::Trajectory step(const detail::Trajectory & z, const qp::Solution & sol, double alpha)
  {
    detail::Trajectory t = z;
    for (std::size_t k = 0; k < t.x.size(); ++k) {
      t.x[k] += alpha * sol.x[k];
      const double r = std::hypot(t.x[k](MpcState::kCos), t.x[k](MpcState::kSin));
      t.x[k].segment<2>(MpcState::kCos) /= r;
    }
    for (std::size_t k = 0; k < t.u.size(); ++k) t.u[k] += alpha * sol.w[k].head<2>();
    return t;
  }

  void finalize(const OcpProblem & p, detail::Trajectory & z, OcpSolution & out) const
  {
    if (out.status == SqpStatus::Converged) {
      // Re-simulate so the shooting states match the dynamics exactly.
      z = detail::rollout(p, p.x0.vec(), z.u);
    }
    const detail::Evaluation ev = detail::evaluate(p, z);
    out.states.clear();
    out.inputs.clear();
    for (const auto & x : z.x) out.states.push_back(MpcState::from_vec(x));
    for (const auto & u : z.u) out.inputs.push_back(MpcInput::from_vec(u));
    out.slacks = ev.slacks;
    out.cost = ev.cost;
    out.objective = ev.cost + options_.slack_penalty * ev.violation;
  }

  SqpOptions options_;
  qp::Solver qp_;
};

inline OcpSolution solve(const OcpProblem & p, const OcpSolution * warm = nullptr, SqpOptions options = {})
{
  SqpSolver solver(options);
  return solver.solve(p, warm);
}

/// Piecewise-linear low-level references from integrating the optimal inputs.
struct CommandProfile
{
  double t0 = 0.0;
  double dt = 0.125;
  std::vector<double> v;      // node values at t0 + k dt
  std::vector<double> delta;

  double end_time() const { return t0 + dt * static_cast<double>(v.size() - 1); }

  struct Value
  {
    double v = 0.0;
    double delta = 0.0;
  };

  /// Linear interpolation between nodes; held constant outside [t0, end].
  Value at(double tau) const
  {
    if (v.empty()) return {};
    const double rel = (tau - t0) / dt;
    if (!(rel > 0.0)) return {v.front(), delta.front()};
    const std::size_t last = v.size() - 1;
    if (rel >= static_cast<double>(last)) return {v.back(), delta.back()};
    const auto i = static_cast<std::size_t>(rel);
    const double f = rel - static_cast<double>(i);
    return {v[i] + f * (v[i + 1] - v[i]), delta[i] + f * (delta[i + 1] - delta[i])};
  }
};

inline CommandProfile synthesize_commands(const OcpSolution & sol, double t, double f_mpc)
{
  CommandProfile prof;
  prof.t0 = t;
  prof.dt = 1.0 / f_mpc;
  if (sol.states.empty()) return prof;
  double v = sol.states.front().v;
  double d = sol.states.front().delta;
  prof.v.push_back(v);
  prof.delta.push_back(d);
  for (const auto & u : sol.inputs) {
    v += u.accel * prof.dt;
    d += u.steer_rate * prof.dt;
    prof.v.push_back(v);
    prof.delta.push_back(d);
  }
  return prof;
}

}  // namespace scootnav

#endif  // SCOOTNAV_NMPC_HPP
