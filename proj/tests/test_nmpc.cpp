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

#include "scootnav/nmpc.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace
{
using namespace scootnav;

constexpr double kTwoPi = 6.283185307179586;

Path straight(double length = 100.0, double half_width = 0.75)
{
  return build_path({Point2(0, 0), Point2(length, 0)}, half_width);
}

// Reference moving east at 0.63 m/s, dynamically consistent with zero inputs.
RefTrajectory consistent_reference(int n, double y = 0.0)
{
  RefTrajectory ref;
  for (int k = 0; k <= n; ++k) {
    ref.states.push_back({2.0 + 0.63 * 0.125 * k, y, 0.63, 1.0, 0.0, 0.0});
    ref.arc.push_back(2.0 + 0.63 * 0.125 * k);
  }
  ref.inputs.assign(n, MpcInput{});
  return ref;
}

OcpProblem make_problem(const MpcState & x0, const RefTrajectory & ref, const Path & path)
{
  return assemble_ocp(x0, ref, path, OcpWeights{}, OcpLimits{}, VehicleParams{}, 8.0);
}

double max_defect(const OcpProblem & p, const OcpSolution & s)
{
  double worst = 0.0;
  for (int k = 0; k < p.horizon(); ++k) {
    const Vec6 next = integrate(s.states[k], s.inputs[k], p.dt, Integrator::Rk4, p.vehicle).vec();
    worst = std::max(worst, (next - s.states[k + 1].vec()).cwiseAbs().maxCoeff());
  }
  return worst;
}

TEST(StageCost, ZeroAtReference)
{
  const MpcState x{1, 2, 0.5, 1, 0, 0.1};
  EXPECT_EQ(stage_cost(x, MpcInput{}, x, MpcInput{}, OcpWeights{}), 0.0);
}

TEST(StageCost, UnitPositionDeviation)
{
  MpcState x{1, 0, 0, 1, 0, 0};
  EXPECT_NEAR(stage_cost(x, MpcInput{}, MpcState{0, 0, 0, 1, 0, 0}, MpcInput{}, OcpWeights{}), 0.1, 1e-15);
}

TEST(StageCost, UnitInputDeviation)
{
  const MpcState x{};
  EXPECT_NEAR(stage_cost(x, MpcInput{1, 1}, x, MpcInput{}, OcpWeights{}), 0.011, 1e-15);
}

TEST(CurveSpeed, LimitValues)
{
  const OcpLimits lim;
  EXPECT_DOUBLE_EQ(curve_speed_limit(0.0, lim), 0.7);
  EXPECT_NEAR(curve_speed_limit(0.65, lim), 0.4, 1e-12);
  EXPECT_NEAR(curve_speed_limit(-0.65, lim), 0.4, 1e-12);
  EXPECT_NEAR(lim.mu(), 1.1538461538461537, 1e-12);
  EXPECT_NEAR(curve_speed_limit(0.325, lim), 0.509090909090909, 1e-12);
}

TEST(CurveSpeed, RejectsCurveSpeedAboveMax)
{
  OcpLimits lim;
  lim.v_curve = 0.8;
  try {
    lim.validate();
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidParams);
    EXPECT_NE(std::string(e.what()).find("mu"), std::string::npos);
  }
}

TEST(Assemble, CountsPrimalVariables)
{
  const auto p = make_problem(MpcState{2, 0, 0.63, 1, 0, 0}, consistent_reference(68), straight());
  EXPECT_EQ(p.horizon(), 68);
  EXPECT_EQ(p.num_primal(), 550);
}

TEST(Assemble, RejectsMismatchedReference)
{
  auto ref = consistent_reference(10);
  ref.inputs.pop_back();
  EXPECT_THROW(
    {
      try {
        make_problem(MpcState{}, ref, straight());
      } catch (const Error & e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
        throw;
      }
    },
    Error);
}

TEST(Assemble, ReferenceIsFeasibleWithSlackConstraints)
{
  const auto p = make_problem(MpcState{2, 0, 0.63, 1, 0, 0}, consistent_reference(68), straight());
  for (int k = 0; k <= 68; ++k) {
    const Eigen::Vector2d u = Eigen::Vector2d::Zero();
    const auto c = stage_constraints(p, p.ref.states[k].vec(), k < 68 ? &u : nullptr);
    EXPECT_GT(c.g.minCoeff(), 0.0) << k;
    EXPECT_DOUBLE_EQ(c.g(c.g.size() - 2), 1.0);  // front corridor, on the centerline
  }
}

TEST(Assemble, ConstraintJacobiansMatchFiniteDifferences)
{
  const Path path = build_path({Point2(0, 0), Point2(5, 0), Point2(5, 5)}, 0.75);
  auto p = make_problem(MpcState{0, 0, 0.5, 1, 0, 0}, consistent_reference(10), path);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(0.5, 5.5), uv(0.05, 0.7), ud(-0.6, 0.6), upsi(0, kTwoPi);
  std::uniform_real_distribution<double> ua(-1.0, 0.7), ur(-0.4, 0.4);
  for (int trial = 0; trial < 200; ++trial) {
    const double psi = upsi(rng);
    Vec6 x;
    x << ux(rng), ux(rng) - 0.5, uv(rng), std::cos(psi), std::sin(psi), ud(rng);
    const Eigen::Vector2d u(ua(rng), ur(rng));
    const auto c = stage_constraints(p, x, &u);
    const double h = 1e-6;
    for (int i = 0; i < 6; ++i) {
      Vec6 xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      const Eigen::VectorXd fd =
        (stage_constraints(p, xp, &u).g - stage_constraints(p, xm, &u).g) / (2 * h);
      EXPECT_LT((fd - c.gx.col(i)).cwiseAbs().maxCoeff(), 1e-5 * (1.0 + c.gx.col(i).cwiseAbs().maxCoeff()))
        << "trial " << trial << " col " << i;
    }
    for (int i = 0; i < 2; ++i) {
      Eigen::Vector2d up = u, um = u;
      up(i) += h;
      um(i) -= h;
      const Eigen::VectorXd fd = (stage_constraints(p, x, &up).g - stage_constraints(p, x, &um).g) / (2 * h);
      EXPECT_LT((fd - c.gu.col(i)).cwiseAbs().maxCoeff(), 1e-5 * (1.0 + c.gu.col(i).cwiseAbs().maxCoeff()));
    }
  }
}

TEST(Assemble, InitialStateOutsideCorridorIsStillSolvable)
{
  const Path path = straight();
  const auto p = make_problem(MpcState{0, 1.2, 0.3, 1, 0, 0}, consistent_reference(68), path);
  const auto sol = solve(p);
  EXPECT_NE(sol.status, SqpStatus::InfeasibleQp);
  EXPECT_GT(sol.slacks.corridor_front, 0.0);
  EXPECT_NEAR(sol.slacks.corridor_front, -segment_sdf(Point2(0, 1.2), path.segments()[0]), 1e-9);
}

TEST(Solve, StaysOnReference)
{
  const auto p = make_problem(MpcState{2, 0, 0.63, 1, 0, 0}, consistent_reference(68), straight());
  const auto sol = solve(p);
  ASSERT_EQ(sol.status, SqpStatus::Converged);
  EXPECT_LT(sol.cost, 1e-6);
  for (const auto & u : sol.inputs) EXPECT_LT(u.vec().cwiseAbs().maxCoeff(), 1e-3);
  EXPECT_LT(max_defect(p, sol), 1e-8);
}

class LateralOffset : public ::testing::Test
{
protected:
  Path path_ = straight();
  HorizonParams hp_;
  OcpProblem problem(double y, double x = 0.0)
  {
    EkfBelief b;
    b.mean = EkfState{x + 0.45, y, 0.0};  // sensor point; front axle at x + 0.9
    auto ref = build_reference(path_, b, hp_, VehicleParams{});
    return make_problem(MpcState{x + 0.9, y, 0.63, 1, 0, 0}, ref, path_);
  }
};

TEST_F(LateralOffset, SteersBackInsideCorridor)
{
  const auto p = problem(0.3);
  const auto sol = solve(p);
  ASSERT_EQ(sol.status, SqpStatus::Converged);
  for (const auto & x : sol.states) {
    EXPECT_GE(path_sdf(x.front(), path_), -1e-6);
    EXPECT_GE(path_sdf(rear_axle(x.vec(), 0.9), path_), -1e-6);
  }
  EXPECT_LT(std::abs(sol.states.back().py), 0.05);
  EXPECT_LT(sol.states[20].py, 0.3);
  EXPECT_LT(max_defect(p, sol), 1e-8);
  EXPECT_LE(sol.slacks.max(), 1e-6);
}

TEST_F(LateralOffset, BoxesHoldExactly)
{
  const auto sol = solve(problem(0.3));
  const OcpLimits lim;
  for (const auto & x : sol.states) {
    EXPECT_GE(x.v, 0.0);
    EXPECT_LE(x.v, lim.v_max);
    EXPECT_LE(std::abs(x.delta), lim.delta_max);
  }
  for (const auto & u : sol.inputs) {
    EXPECT_GE(u.accel, lim.a_min);
    EXPECT_LE(u.accel, lim.a_max);
    EXPECT_LE(std::abs(u.steer_rate), lim.steer_rate_max);
  }
}

TEST_F(LateralOffset, MeritNeverIncreases)
{
  const auto sol = solve(problem(0.3));
  ASSERT_FALSE(sol.merit_steps.empty());
  for (const auto & [before, after] : sol.merit_steps) EXPECT_LE(after, before);
}

TEST_F(LateralOffset, WarmStartConvergesQuickly)
{
  const auto first = solve(problem(0.3));
  ASSERT_EQ(first.status, SqpStatus::Converged);
  // Advance the plant by one control period along the predicted trajectory.
  const MpcState next = first.states[1];
  EkfBelief b;
  b.mean = EkfState{next.px - 0.45 * next.cos_psi, next.py - 0.45 * next.sin_psi, next.heading()};
  auto ref = build_reference(path_, b, hp_, VehicleParams{});
  const auto p = make_problem(next, ref, path_);
  const auto warm = solve(p, &first);
  ASSERT_EQ(warm.status, SqpStatus::Converged);
  EXPECT_LE(warm.iterations, 5);
}

TEST_F(LateralOffset, Deterministic)
{
  const auto a = solve(problem(0.3));
  const auto b = solve(problem(0.3));
  ASSERT_EQ(a.states.size(), b.states.size());
  for (std::size_t k = 0; k < a.states.size(); ++k) EXPECT_EQ(a.states[k].vec(), b.states[k].vec());
  for (std::size_t k = 0; k < a.inputs.size(); ++k) EXPECT_EQ(a.inputs[k].vec(), b.inputs[k].vec());
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST_F(LateralOffset, ScalingCostKeepsMinimizer)
{
  auto p = problem(0.3);
  SqpOptions tight;
  tight.kkt_tol = 1e-8;
  const auto base = solve(p, nullptr, tight);
  p.weights = p.weights.scaled(4.0);
  const auto scaled = solve(p, nullptr, tight);
  ASSERT_EQ(base.status, SqpStatus::Converged);
  ASSERT_EQ(scaled.status, SqpStatus::Converged);
  EXPECT_NEAR(scaled.cost, 4.0 * base.cost, 1e-6 * base.cost);
  // Weakly curved directions (small steering-rate weight) leave the inputs
  // determined only to about 1e-3 at this KKT tolerance.
  for (std::size_t k = 0; k < base.inputs.size(); ++k) {
    EXPECT_LT((base.inputs[k].vec() - scaled.inputs[k].vec()).cwiseAbs().maxCoeff(), 2e-3);
  }
}

TEST(Commands, ZeroInputsGiveConstantProfile)
{
  OcpSolution sol;
  sol.states.assign(5, MpcState{0, 0, 0.4, 1, 0, 0.1});
  sol.inputs.assign(4, MpcInput{});
  const auto prof = synthesize_commands(sol, 2.0, 8.0);
  for (double tau = 1.9; tau < 3.0; tau += 0.01) {
    EXPECT_DOUBLE_EQ(prof.at(tau).v, 0.4);
    EXPECT_DOUBLE_EQ(prof.at(tau).delta, 0.1);
  }
}

TEST(Commands, IntegratesAcceleration)
{
  OcpSolution sol;
  sol.states.assign(3, MpcState{});
  sol.inputs = {MpcInput{0.7, 0.0}, MpcInput{}};
  const auto prof = synthesize_commands(sol, 0.0, 8.0);
  EXPECT_DOUBLE_EQ(prof.at(0.0).v, 0.0);
  EXPECT_NEAR(prof.at(0.125).v, 0.0875, 1e-15);
  EXPECT_NEAR(prof.at(0.0625).v, 0.04375, 1e-15);
}

TEST(Commands, MatchSolutionStatesAtStageTimes)
{
  const Path path = straight();
  EkfBelief b;
  b.mean = EkfState{0.45, 0.2, 0.0};
  const auto ref = build_reference(path, b, HorizonParams{}, VehicleParams{});
  const auto p = make_problem(MpcState{0.9, 0.2, 0.3, 1, 0, 0}, ref, path);
  const auto sol = solve(p);
  const auto prof = synthesize_commands(sol, 1.0, 8.0);
  for (std::size_t k = 0; k < sol.states.size(); ++k) {
    const auto c = prof.at(1.0 + 0.125 * static_cast<double>(k));
    EXPECT_NEAR(c.v, sol.states[k].v, 1e-9);
    EXPECT_NEAR(c.delta, sol.states[k].delta, 1e-9);
  }
}

}  // namespace
