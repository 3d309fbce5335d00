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

#ifndef SCOOTNAV_QP_HPP
#define SCOOTNAV_QP_HPP

// Convex QP with optimal-control structure:
//
//   min  sum_k  1/2 [x_k; w_k]' [Q_k S_k'; S_k R_k] [x_k; w_k] + q_k' x_k + r_k' w_k
//   s.t. x_0 = x0
//        x_{k+1} = A_k x_k + B_k w_k + c_k          k < N
//        C_k x_k + D_k w_k >= lower_k
//
// solved by a Mehrotra predictor-corrector interior point method whose Newton
// systems are eliminated stage by stage with a Riccati recursion. A dense QP
// is the special case of one stage with an empty x.

#include "scootnav/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace scootnav::qp
{

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline constexpr int kStallIterations = 5;

struct Stage
{
  MatrixXd Q, S, R;
  VectorXd q, r;
  MatrixXd A, B;  // ignored on the last stage
  VectorXd c;
  MatrixXd C, D;
  VectorXd lower;

  int nx() const { return static_cast<int>(Q.rows()); }
  int nw() const { return static_cast<int>(R.rows()); }
  int rows() const { return static_cast<int>(lower.size()); }

  /// Zero-initialized stage; `nx_next` < 0 marks the last stage.
  static Stage zeros(int nx, int nw, int rows, int nx_next)
  {
    Stage s;
    s.Q = MatrixXd::Zero(nx, nx);
    s.S = MatrixXd::Zero(nw, nx);
    s.R = MatrixXd::Zero(nw, nw);
    s.q = VectorXd::Zero(nx);
    s.r = VectorXd::Zero(nw);
    const int nn = std::max(nx_next, 0);
    s.A = MatrixXd::Zero(nn, nx);
    s.B = MatrixXd::Zero(nn, nw);
    s.c = VectorXd::Zero(nn);
    s.C = MatrixXd::Zero(rows, nx);
    s.D = MatrixXd::Zero(rows, nw);
    s.lower = VectorXd::Zero(rows);
    return s;
  }
};

struct Problem
{
  std::vector<Stage> stages;
  VectorXd x0;

  int horizon() const { return static_cast<int>(stages.size()) - 1; }
};

struct Options
{
  double tol = 1e-10;  // scaled by the largest gradient, defect or bound entry
  bool polish = true;
  int max_iter = 80;
  double fraction_to_boundary = 0.995;
};

enum class Status { Solved, MaxIter, Failed };

/// Primal-dual point. `costate[k]` multiplies the constraint that defines x_k.
struct Iterate
{
  std::vector<VectorXd> x, w, costate, dual, slack;
};

struct Solution : Iterate
{
  Status status = Status::Failed;
  int iterations = 0;
  double kkt = std::numeric_limits<double>::infinity();
};

struct Residuals
{
  double stationarity = 0.0;
  double equality = 0.0;
  double primal = 0.0;           // worst row violation
  double complementarity = 0.0;  // worst |dual * row slack|
  double dual_sign = 0.0;        // worst negative dual

  double max() const
  {
    return std::max({stationarity, equality, primal, complementarity, dual_sign});
  }
};

/// First-order optimality measures of (x, w, costate, dual). Row slacks are
/// recomputed from the primal point.
inline Residuals residuals(
  const Problem & p, const std::vector<VectorXd> & x, const std::vector<VectorXd> & w,
  const std::vector<VectorXd> & costate, const std::vector<VectorXd> & dual)
{
  Residuals res;
  const int n = p.horizon();
  if (p.x0.size() > 0) res.equality = (p.x0 - x[0]).cwiseAbs().maxCoeff();
  for (int k = 0; k <= n; ++k) {
    const Stage & st = p.stages[k];
    VectorXd rx = st.Q * x[k] + st.S.transpose() * w[k] + st.q - costate[k] - st.C.transpose() * dual[k];
    VectorXd rw = st.S * x[k] + st.R * w[k] + st.r - st.D.transpose() * dual[k];
    if (k < n) {
      rx += st.A.transpose() * costate[k + 1];
      rw += st.B.transpose() * costate[k + 1];
      const VectorXd e = st.A * x[k] + st.B * w[k] + st.c - x[k + 1];
      if (e.size() > 0) res.equality = std::max(res.equality, e.cwiseAbs().maxCoeff());
    }
    if (rx.size() > 0) res.stationarity = std::max(res.stationarity, rx.cwiseAbs().maxCoeff());
    if (rw.size() > 0) res.stationarity = std::max(res.stationarity, rw.cwiseAbs().maxCoeff());
    if (st.rows() > 0) {
      const VectorXd row = st.C * x[k] + st.D * w[k] - st.lower;
      res.primal = std::max(res.primal, (-row).cwiseMax(0.0).maxCoeff());
      res.complementarity =
        std::max(res.complementarity, dual[k].cwiseProduct(row).cwiseAbs().maxCoeff());
      res.dual_sign = std::max(res.dual_sign, (-dual[k]).cwiseMax(0.0).maxCoeff());
    }
  }
  return res;
}

inline double objective(
  const Problem & p, const std::vector<VectorXd> & x, const std::vector<VectorXd> & w)
{
  double f = 0.0;
  for (int k = 0; k <= p.horizon(); ++k) {
    const Stage & st = p.stages[k];
    f += 0.5 * x[k].dot(st.Q * x[k]) + w[k].dot(st.S * x[k]) + 0.5 * w[k].dot(st.R * w[k]) +
         st.q.dot(x[k]) + st.r.dot(w[k]);
  }
  return f;
}

/// Interior point solver. Owns its factorization workspace; reuse one
/// instance for repeated solves, one solve at a time.
class Solver
{
public:
  explicit Solver(Options options = {}) : options_(options) {}

  const Options & options() const { return options_; }

  Solution solve(const Problem & p)
  {
    check(p);
    const int n = p.horizon();
    resize(p);
    build_rows(p);

    Solution z;
    z.x.resize(n + 1);
    z.w.resize(n + 1);
    z.costate.resize(n + 1);
    z.dual.resize(n + 1);
    z.slack.resize(n + 1);
    int total_rows = 0;
    for (int k = 0; k <= n; ++k) {
      const Stage & st = p.stages[k];
      z.x[k] = VectorXd::Zero(st.nx());
      z.w[k] = VectorXd::Zero(st.nw());
      z.costate[k] = VectorXd::Zero(st.nx());
      z.dual[k] = VectorXd::Ones(st.rows());
      z.slack[k] = VectorXd::Ones(st.rows());
      total_rows += st.rows();
    }
    if (p.x0.size() > 0) z.x[0] = p.x0;
    if (total_rows > 0 && !initial_point(p, z)) {
      z.status = Status::Failed;
      return z;
    }

    // Absolute tolerance relative to the magnitude of the problem data.
    double scale = 1.0;
    for (const Stage & st : p.stages) {
      for (const VectorXd * v : {&st.q, &st.r, &st.c, &st.lower}) {
        if (v->size() > 0) scale = std::max(scale, v->cwiseAbs().maxCoeff());
      }
    }
    const double tol = options_.tol * scale;

    // Best iterate so far, returned if progress stalls at the rounding floor.
    Iterate best = z;
    double best_res = std::numeric_limits<double>::infinity();
    double best_progress = std::numeric_limits<double>::infinity();
    int best_iter = 0;
    bool restore = false;
    for (int iter = 0; iter <= options_.max_iter; ++iter) {
      compute_residuals(p, z);
      const double mu = total_rows > 0 ? complementarity(z) / total_rows : 0.0;
      double worst_pair = 0.0;
      for (int k = 0; k <= n; ++k) {
        if (z.dual[k].size() > 0) {
          worst_pair = std::max(worst_pair, z.slack[k].cwiseProduct(z.dual[k]).maxCoeff());
        }
      }
      const double res = std::max(residual_norm_, worst_pair);
      z.iterations = iter;
      if (res <= tol) {
        z.status = Status::Solved;
        break;
      }
      if (!std::isfinite(res)) {
        restore = std::isfinite(best_res);
        z.status = restore ? Status::MaxIter : Status::Failed;
        break;
      }
      if (res < best_res) {
        best_res = res;
        best = z;
      }
      // Stalled when neither feasibility nor average complementarity improves.
      const double progress = std::max(residual_norm_, mu);
      if (progress < best_progress) {
        best_progress = progress;
        best_iter = iter;
      }
      if (iter == options_.max_iter || iter - best_iter >= kStallIterations) {
        z.status = Status::MaxIter;
        restore = true;
        break;
      }

      for (int k = 0; k <= n; ++k) theta_[k] = z.dual[k].cwiseQuotient(z.slack[k]);
      if (!factorize(p)) {
        z.status = Status::Failed;
        break;
      }

      // Predictor (affine scaling) direction.
      for (int k = 0; k <= n; ++k) rc_[k] = z.slack[k].cwiseProduct(z.dual[k]);
      newton_direction(p, z);
      const double alpha_aff = max_step(z, 1.0);
      double mu_aff = 0.0;
      for (int k = 0; k <= n; ++k) {
        mu_aff += (z.slack[k] + alpha_aff * dt_[k]).dot(z.dual[k] + alpha_aff * dl_[k]);
      }
      mu_aff = total_rows > 0 ? mu_aff / total_rows : 0.0;
      const double sigma = mu > 0.0 ? std::min(1.0, std::pow(mu_aff / mu, 3)) : 0.0;

      // Corrector with centering.
      for (int k = 0; k <= n; ++k) {
        rc_[k] = z.slack[k].cwiseProduct(z.dual[k]) + dt_[k].cwiseProduct(dl_[k]);
        rc_[k].array() -= sigma * mu;
      }
      newton_direction(p, z);
      const double alpha = max_step(z, options_.fraction_to_boundary);

      for (int k = 0; k <= n; ++k) {
        z.x[k] += alpha * dx_[k];
        z.w[k] += alpha * dw_[k];
        z.costate[k] += alpha * dnu_[k];
        z.slack[k] += alpha * dt_[k];
        z.dual[k] += alpha * dl_[k];
      }
    }
    if (restore) static_cast<Iterate &>(z) = std::move(best);
    z.kkt = residuals(p, z.x, z.w, z.costate, z.dual).max();
    if (options_.polish && z.status != Status::Failed) polish(p, z);
    if (z.status == Status::MaxIter && z.kkt <= tol) z.status = Status::Solved;
    return z;
  }

private:
  // Least-squares start followed by a shift into the positive orthant.
  bool initial_point(const Problem & p, Solution & z)
  {
    const int n = p.horizon();
    compute_residuals(p, z);
    for (int k = 0; k <= n; ++k) {
      theta_[k] = VectorXd::Ones(z.dual[k].size());
      rc_[k] = VectorXd::Zero(z.dual[k].size());
    }
    if (!factorize(p)) return false;
    newton_direction(p, z);
    double min_t = 0.0, min_l = 0.0;
    for (int k = 0; k <= n; ++k) {
      z.x[k] += dx_[k];
      z.w[k] += dw_[k];
      z.costate[k] += dnu_[k];
      z.slack[k] += dt_[k];
      z.dual[k] += dl_[k];
      if (z.slack[k].size() > 0) {
        min_t = std::min(min_t, z.slack[k].minCoeff());
        min_l = std::min(min_l, z.dual[k].minCoeff());
      }
    }
    double tl = 0.0, sum_t = 0.0, sum_l = 0.0;
    for (int k = 0; k <= n; ++k) {
      z.slack[k].array() += -1.5 * min_t;
      z.dual[k].array() += -1.5 * min_l;
      tl += z.slack[k].dot(z.dual[k]);
      sum_t += z.slack[k].sum();
      sum_l += z.dual[k].sum();
    }
    const double shift_t = sum_l > 0.0 ? 0.5 * tl / sum_l : 0.0;
    const double shift_l = sum_t > 0.0 ? 0.5 * tl / sum_t : 0.0;
    for (int k = 0; k <= n; ++k) {
      z.slack[k] = (z.slack[k].array() + shift_t).cwiseMax(1e-4);
      z.dual[k] = (z.dual[k].array() + shift_l).cwiseMax(1e-4);
    }
    return true;
  }

  static void check(const Problem & p)
  {
    if (p.stages.empty()) throw Error(ErrorKind::DimensionMismatch, "QP has no stages");
    const int n = p.horizon();
    if (p.x0.size() != p.stages[0].nx()) {
      throw Error(ErrorKind::DimensionMismatch, "x0 does not match stage 0");
    }
    for (int k = 0; k <= n; ++k) {
      const Stage & st = p.stages[k];
      const int nx = st.nx(), nw = st.nw(), m = st.rows();
      bool ok = st.Q.cols() == nx && st.S.rows() == nw && st.S.cols() == nx && st.R.cols() == nw &&
                st.q.size() == nx && st.r.size() == nw && st.C.rows() == m && st.C.cols() == nx &&
                st.D.rows() == m && st.D.cols() == nw;
      if (k < n) {
        const int nn = p.stages[k + 1].nx();
        ok = ok && st.A.rows() == nn && st.A.cols() == nx && st.B.rows() == nn &&
             st.B.cols() == nw && st.c.size() == nn;
      }
      if (!ok) throw Error(ErrorKind::DimensionMismatch, "QP stage " + std::to_string(k));
    }
  }

  void resize(const Problem & p)
  {
    const std::size_t m = p.stages.size();
    for (auto * v : {&theta_, &rc_, &rp_, &rdx_, &rdw_, &re_, &gx_, &gw_, &dx_, &dw_, &dnu_, &dt_, &dl_,
                     &pv_, &kff_}) {
      v->resize(m);
    }
    P_.resize(m);
    K_.resize(m);
    Shat_.resize(m);
    llt_.resize(m);
  }

  static double complementarity(const Solution & z)
  {
    double s = 0.0;
    for (std::size_t k = 0; k < z.dual.size(); ++k) s += z.slack[k].dot(z.dual[k]);
    return s;
  }

  void compute_residuals(const Problem & p, const Solution & z)
  {
    const int n = p.horizon();
    residual_norm_ = 0.0;
    const auto track = [this](const VectorXd & v) {
      if (v.size() > 0) residual_norm_ = std::max(residual_norm_, v.cwiseAbs().maxCoeff());
    };
    init_res_ = p.x0 - z.x[0];
    track(init_res_);
    for (int k = 0; k <= n; ++k) {
      const Stage & st = p.stages[k];
      rdx_[k] = st.Q * z.x[k] + st.S.transpose() * z.w[k] + st.q - z.costate[k];
      rdw_[k] = st.S * z.x[k] + st.R * z.w[k] + st.r;
      subtract_transpose(k, z.dual[k], rdx_[k], rdw_[k]);
      if (k < n) {
        rdx_[k] += st.A.transpose() * z.costate[k + 1];
        rdw_[k] += st.B.transpose() * z.costate[k + 1];
        re_[k] = st.A * z.x[k] + st.B * z.w[k] + st.c - z.x[k + 1];
        track(re_[k]);
      }
      rp_[k] = apply(k, z.x[k], z.w[k]) - st.lower - z.slack[k];
      track(rdx_[k]);
      track(rdw_[k]);
      track(rp_[k]);
    }
  }

  // Row-wise nonzeros of [C D]; most rows are bounds with a single entry.
  void build_rows(const Problem & p)
  {
    rows_.resize(p.stages.size());
    for (std::size_t k = 0; k < p.stages.size(); ++k) {
      const Stage & st = p.stages[k];
      const int nx = st.nx();
      rows_[k].assign(static_cast<std::size_t>(st.rows()), {});
      for (int i = 0; i < st.rows(); ++i) {
        auto & row = rows_[k][static_cast<std::size_t>(i)];
        for (int j = 0; j < nx; ++j) {
          if (st.C(i, j) != 0.0) row.push_back({j, st.C(i, j)});
        }
        for (int j = 0; j < st.nw(); ++j) {
          if (st.D(i, j) != 0.0) row.push_back({nx + j, st.D(i, j)});
        }
      }
    }
  }

  // C_k x + D_k w
  VectorXd apply(int k, const VectorXd & x, const VectorXd & w) const
  {
    const auto & rows = rows_[static_cast<std::size_t>(k)];
    const int nx = static_cast<int>(x.size());
    VectorXd out(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double sum = 0.0;
      for (const RowEntry & e : rows[i]) sum += e.value * (e.col < nx ? x(e.col) : w(e.col - nx));
      out(static_cast<Eigen::Index>(i)) = sum;
    }
    return out;
  }

  // gx -= C_k' y, gw -= D_k' y
  void subtract_transpose(int k, const VectorXd & y, VectorXd & gx, VectorXd & gw) const
  {
    const auto & rows = rows_[static_cast<std::size_t>(k)];
    const int nx = static_cast<int>(gx.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double yi = y(static_cast<Eigen::Index>(i));
      for (const RowEntry & e : rows[i]) {
        if (e.col < nx) gx(e.col) -= e.value * yi; else gw(e.col - nx) -= e.value * yi;
      }
    }
  }

  bool factorize(const Problem & p)
  {
    const int n = p.horizon();
    for (int k = n; k >= 0; --k) {
      const Stage & st = p.stages[k];
      const int nx = st.nx(), nw = st.nw();
      MatrixXd h(nx + nw, nx + nw);
      h.topLeftCorner(nx, nx) = st.Q;
      h.bottomLeftCorner(nw, nx) = st.S;
      h.bottomRightCorner(nw, nw) = st.R;
      for (std::size_t i = 0; i < rows_[k].size(); ++i) {
        const double t = theta_[k](static_cast<Eigen::Index>(i));
        if (t == 0.0) continue;
        for (const RowEntry & a : rows_[k][i]) {
          for (const RowEntry & b : rows_[k][i]) h(a.col, b.col) += t * a.value * b.value;
        }
      }
      MatrixXd qt = h.topLeftCorner(nx, nx);
      MatrixXd stt = h.bottomLeftCorner(nw, nx);
      MatrixXd rt = h.bottomRightCorner(nw, nw);
      if (k < n) {
        const MatrixXd pa = P_[k + 1].lazyProduct(st.A);
        const MatrixXd pb = P_[k + 1].lazyProduct(st.B);
        qt += st.A.transpose().lazyProduct(pa);
        stt += st.B.transpose().lazyProduct(pa);
        rt += st.B.transpose().lazyProduct(pb);
      }
      if (st.nw() > 0) {
        llt_[k].compute(rt);
        if (llt_[k].info() != Eigen::Success) return false;
        K_[k] = -llt_[k].solve(stt);
        P_[k] = qt + stt.transpose().lazyProduct(K_[k]);
      } else {
        K_[k].resize(0, st.nx());
        P_[k] = qt;
      }
      P_[k] = 0.5 * (P_[k] + P_[k].transpose()).eval();
      Shat_[k] = std::move(stt);
    }
    return true;
  }

  // Solves the Newton system for the current complementarity target rc_.
  void newton_direction(const Problem & p, const Solution & z)
  {
    const int n = p.horizon();
    for (int k = 0; k <= n; ++k) {
      const Stage & st = p.stages[k];
      // Multiplier contribution after eliminating slack and dual steps.
      const VectorXd y =
        (-rc_[k]).cwiseQuotient(z.slack[k]) - theta_[k].cwiseProduct(rp_[k]);
      gx_[k] = rdx_[k];
      gw_[k] = rdw_[k];
      subtract_transpose(k, y, gx_[k], gw_[k]);
    }
    riccati_solve(p);
    for (int k = 0; k <= n; ++k) {
      const Stage & st = p.stages[k];
      dt_[k] = apply(k, dx_[k], dw_[k]) + rp_[k];
      dl_[k] = (-rc_[k] - z.dual[k].cwiseProduct(dt_[k])).cwiseQuotient(z.slack[k]);
    }
  }

  // Equality-constrained LQ step for gradients gx_/gw_, dynamics defects re_
  // and initial residual init_res_, using the current factorization.
  void riccati_solve(const Problem & p)
  {
    const int n = p.horizon();
    for (int k = n; k >= 0; --k) {
      const Stage & st = p.stages[k];
      VectorXd qh = gx_[k];
      VectorXd rh = gw_[k];
      if (k < n) {
        const VectorXd v = P_[k + 1] * re_[k] + pv_[k + 1];
        qh.noalias() += st.A.transpose() * v;
        rh.noalias() += st.B.transpose() * v;
      }
      if (st.nw() > 0) {
        kff_[k] = -llt_[k].solve(rh);
        pv_[k] = qh + Shat_[k].transpose() * kff_[k];
      } else {
        kff_[k].resize(0);
        pv_[k] = qh;
      }
    }
    dx_[0] = init_res_;
    for (int k = 0; k <= n; ++k) {
      const Stage & st = p.stages[k];
      dw_[k] = K_[k] * dx_[k] + kff_[k];
      dnu_[k] = P_[k] * dx_[k] + pv_[k];
      if (k < n) dx_[k + 1] = st.A * dx_[k] + st.B * dw_[k] + re_[k];
    }
  }

  // Refines the interior point solution on its identified active set with a
  // few augmented Lagrangian sweeps; kept only if the KKT residual improves.
  void polish(const Problem & p, Solution & z)
  {
    const int n = p.horizon();
    double scale = 1.0;
    for (const Stage & st : p.stages) {
      if (st.nx() > 0) scale = std::max(scale, st.Q.diagonal().cwiseAbs().maxCoeff());
      if (st.nw() > 0) scale = std::max(scale, st.R.diagonal().cwiseAbs().maxCoeff());
    }
    const double kPenalty = 1e2 * scale;
    Solution trial = z;
    std::vector<VectorXd> active(n + 1);
    for (int k = 0; k <= n; ++k) {
      active[k] = (z.dual[k].array() > z.slack[k].array()).cast<double>().matrix();
      trial.dual[k] = trial.dual[k].cwiseProduct(active[k]);
      theta_[k] = kPenalty * active[k];
    }
    if (!factorize(p)) return;
    for (int sweep = 0; sweep < 6; ++sweep) {
      compute_residuals(p, trial);
      for (int k = 0; k <= n; ++k) {
        const Stage & st = p.stages[k];
        const VectorXd y =
          -kPenalty * active[k].cwiseProduct(apply(k, trial.x[k], trial.w[k]) - st.lower);
        gx_[k] = rdx_[k];
        gw_[k] = rdw_[k];
        subtract_transpose(k, y, gx_[k], gw_[k]);
      }
      riccati_solve(p);
      for (int k = 0; k <= n; ++k) {
        const Stage & st = p.stages[k];
        trial.x[k] += dx_[k];
        trial.w[k] += dw_[k];
        trial.costate[k] += dnu_[k];
        const VectorXd row = apply(k, trial.x[k], trial.w[k]) - st.lower;
        trial.dual[k] -= kPenalty * active[k].cwiseProduct(row);
      }
    }
    const double kkt = residuals(p, trial.x, trial.w, trial.costate, trial.dual).max();
    if (!(kkt < z.kkt)) return;
    for (int k = 0; k <= n; ++k) {
      const Stage & st = p.stages[k];
      trial.slack[k] = (apply(k, trial.x[k], trial.w[k]) - st.lower).cwiseMax(0.0);
    }
    trial.kkt = kkt;
    z = std::move(trial);
  }

  double max_step(const Solution & z, double fraction) const
  {
    double alpha = 1.0;
    for (std::size_t k = 0; k < z.slack.size(); ++k) {
      for (Eigen::Index i = 0; i < z.slack[k].size(); ++i) {
        if (dt_[k](i) < 0.0) alpha = std::min(alpha, -fraction * z.slack[k](i) / dt_[k](i));
        if (dl_[k](i) < 0.0) alpha = std::min(alpha, -fraction * z.dual[k](i) / dl_[k](i));
      }
    }
    return alpha;
  }

  Options options_;
  double residual_norm_ = 0.0;
  VectorXd init_res_;
  std::vector<VectorXd> theta_, rc_, rp_, rdx_, rdw_, re_, gx_, gw_, dx_, dw_, dnu_, dt_, dl_, pv_,
    kff_;
  std::vector<MatrixXd> P_, K_, Shat_;
  std::vector<Eigen::LLT<MatrixXd>> llt_;
  struct RowEntry
  {
    int col;
    double value;
  };
  std::vector<std::vector<std::vector<RowEntry>>> rows_;
};

/// Dense convenience wrapper: min 1/2 z'Hz + g'z  s.t.  C z >= lower.
inline Solution solve_dense(
  const MatrixXd & h, const VectorXd & g, const MatrixXd & c, const VectorXd & lower,
  Options options = {})
{
  Problem p;
  Stage st = Stage::zeros(0, static_cast<int>(h.rows()), static_cast<int>(lower.size()), -1);
  st.R = h;
  st.r = g;
  st.D = c;
  st.lower = lower;
  p.stages.push_back(std::move(st));
  p.x0 = VectorXd::Zero(0);
  Solver solver(options);
  return solver.solve(p);
}

}  // namespace scootnav::qp

#endif  // SCOOTNAV_QP_HPP
