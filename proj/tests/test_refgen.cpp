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

#include "scootnav/refgen.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace
{
using namespace scootnav;

const VehicleParams kVehicle{};

// Belief whose front axle sits at (x, y) with heading psi.
EkfBelief front_at(double x, double y, double psi)
{
  const double arm = kVehicle.wheelbase - kVehicle.rear_to_sensor;
  EkfBelief b;
  b.mean = {x - arm * std::cos(psi), y - arm * std::sin(psi), psi};
  return b;
}

Path l_path()
{
  return build_path({Point2(0, 0), Point2(10, 0), Point2(10, 10), Point2(0, 10)}, 0.75);
}

TEST(Horizon, Examples)
{
  const Horizon a = horizon({});
  EXPECT_NEAR(a.t, 6.0 / 0.7, 1e-12);
  EXPECT_NEAR(a.t, 8.5714, 1e-4);
  EXPECT_EQ(a.n, 68);
  EXPECT_NEAR(a.d, 5.4, 1e-12);

  HorizonParams p;
  p.v_max = 0.75;
  const Horizon b = horizon(p);
  EXPECT_NEAR(b.t, 8.0, 1e-12);
  EXPECT_EQ(b.n, 64);
  EXPECT_NEAR(b.d, 5.4, 1e-12);

  p.v_max = 6.0;
  p.f_mpc = 1.0;
  const Horizon c = horizon(p);
  EXPECT_NEAR(c.t, 1.0, 1e-12);
  EXPECT_EQ(c.n, 1);
  EXPECT_NEAR(c.d, 5.4, 1e-12);
}

TEST(Horizon, StepsNeverExceedHorizonTime)
{
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> v(0.2, 2.0), f(1.0, 20.0);
  for (int i = 0; i < 1000; ++i) {
    HorizonParams p;
    p.v_max = v(rng);
    p.f_mpc = f(rng);
    const Horizon h = horizon(p);
    EXPECT_LE(h.n / p.f_mpc, h.t + 1e-9);
    EXPECT_GT((h.n + 1) / p.f_mpc, h.t);
    EXPECT_NEAR(h.d, 0.9 * p.horizon_length_m, 1e-12);
  }
}

TEST(Horizon, RejectsInvalidParams)
{
  HorizonParams p;
  p.v_max = 0.0;
  EXPECT_THROW(p.validate(), Error);
  p = {};
  p.f_mpc = 0.1;
  EXPECT_THROW(p.validate(), Error);
  EXPECT_NO_THROW(HorizonParams{}.validate());
}

TEST(BuildReference, StraightPathFromStart)
{
  const Path path = build_path({Point2(0, 0), Point2(100, 0)}, 0.75);
  const RefTrajectory ref = build_reference(path, front_at(0, 0, 0), {}, kVehicle, 2.5);
  ASSERT_EQ(ref.states.size(), 69u);
  ASSERT_EQ(ref.inputs.size(), 68u);
  EXPECT_EQ(ref.horizon(), 68);
  EXPECT_EQ(ref.t, 2.5);
  EXPECT_NEAR(5.4 / 68, 0.0794, 1e-4);
  for (int k = 0; k <= 68; ++k) {
    const MpcState & x = ref.states[k];
    EXPECT_NEAR(x.px, k * 5.4 / 68, 1e-12);
    EXPECT_NEAR(x.py, 0.0, 1e-12);
    EXPECT_NEAR(x.v, 0.63, 1e-12);
    EXPECT_EQ(x.cos_psi, 1.0);
    EXPECT_EQ(x.sin_psi, 0.0);
    EXPECT_EQ(x.delta, 0.0);
  }
  for (const MpcInput & u : ref.inputs) {
    EXPECT_EQ(u.accel, 0.0);
    EXPECT_EQ(u.steer_rate, 0.0);
  }
}

TEST(BuildReference, StopsAtPathEnd)
{
  const Path path = l_path();
  const RefTrajectory ref = build_reference(path, front_at(0, 10, std::numbers::pi), {}, kVehicle);
  for (const MpcState & x : ref.states) {
    EXPECT_NEAR(x.px, 0.0, 1e-12);
    EXPECT_NEAR(x.py, 10.0, 1e-12);
    EXPECT_EQ(x.v, 0.0);
    EXPECT_NEAR(x.cos_psi, -1.0, 1e-12);
    EXPECT_NEAR(x.sin_psi, 0.0, 1e-12);
  }
}

TEST(BuildReference, ClampsPastFinalWaypoint)
{
  const Path path = build_path({Point2(0, 0), Point2(3, 0)}, 0.75);
  const RefTrajectory ref = build_reference(path, front_at(0, 0, 0), {}, kVehicle);
  for (std::size_t k = 0; k < ref.states.size(); ++k) {
    const double s = k * 5.4 / 68;
    const MpcState & x = ref.states[k];
    if (s >= 3.0) {
      EXPECT_NEAR(x.px, 3.0, 1e-12);
      EXPECT_EQ(x.v, 0.0);
      EXPECT_EQ(ref.arc[k], 3.0);
    } else {
      EXPECT_NEAR(x.px, s, 1e-12);
      EXPECT_NEAR(x.v, 0.63, 1e-12);
    }
  }
}

TEST(BuildReference, LateralOffsetIsProjectedAway)
{
  const Path path = build_path({Point2(0, 0), Point2(100, 0)}, 0.75);
  const RefTrajectory on = build_reference(path, front_at(7, 0, 0), {}, kVehicle);
  const RefTrajectory off = build_reference(path, front_at(7, 1, 0), {}, kVehicle);
  ASSERT_EQ(on.states.size(), off.states.size());
  for (std::size_t k = 0; k < on.states.size(); ++k) {
    EXPECT_LT((on.states[k].vec() - off.states[k].vec()).norm(), 1e-12);
  }
}

TEST(BuildReference, UsesFrontAxleNotSensor)
{
  const Path path = build_path({Point2(0, 0), Point2(100, 0)}, 0.75);
  EkfBelief b;
  b.mean = {10.0, 0.0, 0.0};
  const RefTrajectory ref = build_reference(path, b, {}, kVehicle);
  EXPECT_NEAR(ref.states[0].px, 10.45, 1e-12);
}

TEST(BuildReference, Invariants)
{
  const Path path = l_path();
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> along(0.0, 30.0), lateral(-0.5, 0.5), ang(-3.0, 3.0);
  const double spacing = 5.4 / 68;
  for (int i = 0; i < 300; ++i) {
    const PathSample smp = sample(path, along(rng));
    const double nx = -std::sin(smp.heading), ny = std::cos(smp.heading), off = lateral(rng);
    const RefTrajectory ref =
      build_reference(path, front_at(smp.point.x() + off * nx, smp.point.y() + off * ny, ang(rng)), {}, kVehicle);
    ASSERT_EQ(ref.states.size(), 69u);
    for (std::size_t k = 0; k < ref.states.size(); ++k) {
      const MpcState & x = ref.states[k];
      EXPECT_GE(path_sdf(Point2(x.px, x.py), path), 1.0 - 1e-9);
      EXPECT_NEAR(x.cos_psi * x.cos_psi + x.sin_psi * x.sin_psi, 1.0, 1e-15);
      EXPECT_TRUE(x.v == 0.0 || std::abs(x.v - 0.63) < 1e-12);
      EXPECT_EQ(x.delta, 0.0);
      if (k == 0) continue;
      EXPECT_GE(ref.arc[k], ref.arc[k - 1]);
      const MpcState & p = ref.states[k - 1];
      const double gap = std::hypot(x.px - p.px, x.py - p.py);
      EXPECT_LE(gap, spacing + 1e-12);
      const bool same_leg = std::abs(x.cos_psi - p.cos_psi) < 1e-12 && std::abs(x.sin_psi - p.sin_psi) < 1e-12;
      if (same_leg && ref.arc[k] < path.total_length()) EXPECT_NEAR(gap, spacing, 1e-12);
    }
  }
}

TEST(BuildReference, ProgressIsMonotoneWhenDrivingForward)
{
  const Path path = l_path();
  double last = -1.0;
  for (double s = 0.0; s < path.total_length(); s += 0.05) {
    const PathSample smp = sample(path, s);
    const RefTrajectory ref = build_reference(path, front_at(smp.point.x(), smp.point.y(), smp.heading), {}, kVehicle);
    EXPECT_GE(ref.arc[0], last - 1e-12) << "s = " << s;
    last = ref.arc[0];
  }
}

}  // namespace
