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

#include "scootnav/localization.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace
{
using namespace scootnav;

const VehicleParams kParams{};

double min_eig(const Mat3 & m) { return Eigen::SelfAdjointEigenSolver<Mat3>(m).eigenvalues().minCoeff(); }

GnssFix fix_at(double x, double y, double var, double t)
{
  GnssFix f;
  f.z = {x, y};
  f.r = Eigen::Matrix2d::Identity() * var;
  f.stamp = t;
  return f;
}

EkfBelief belief(double x, double y, double psi, const Mat3 & cov)
{
  EkfBelief b;
  b.mean = {x, y, psi};
  b.cov = cov;
  return b;
}

TEST(Predict, StationaryAddsProcessNoiseOnly)
{
  const ProcessNoise noise;
  Mat3 cov;
  cov << 0.3, 0.1, 0.05, 0.1, 0.2, -0.02, 0.05, -0.02, 0.1;
  const EkfBelief b = belief(1.0, 2.0, 0.4, cov);
  const EkfBelief p = predict(b, {0.0, 0.3, 0.0}, 0.1, noise, kParams);
  EXPECT_EQ(p.mean.vec(), b.mean.vec());
  EXPECT_LT((p.cov - (cov + 0.1 * noise.q)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(p.stamp, 0.1, 1e-15);
}

TEST(Predict, StraightEulerStep)
{
  const EkfBelief b = belief(0.0, 0.0, 0.0, Mat3::Identity() * 0.01);
  const EkfBelief p = predict(b, {0.7, 0.0, 0.0}, 0.1, {}, kParams);
  EXPECT_NEAR(p.mean.x, 0.07, 1e-15);
  EXPECT_EQ(p.mean.y, 0.0);
  EXPECT_EQ(p.mean.psi, 0.0);
}

TEST(Predict, DefaultProcessNoise)
{
  const ProcessNoise noise;
  EXPECT_EQ(noise.q(0, 0), 0.01);
  EXPECT_EQ(noise.q(1, 1), 0.01);
  EXPECT_EQ(noise.q(2, 2), 0.02);
  EXPECT_EQ((noise.q - Mat3(noise.q.diagonal().asDiagonal())).norm(), 0.0);
}

TEST(Predict, JacobianPropagatesHeadingUncertainty)
{
  Mat3 cov = Mat3::Zero();
  cov(2, 2) = 0.04;
  const EkfBelief b = belief(0.0, 0.0, 0.3, cov);
  ProcessNoise none;
  none.q.setZero();
  const double dt = 0.1, v = 0.6, delta = 0.2;
  const EkfBelief p = predict(b, {v, delta, 0.0}, dt, none, kParams);
  const double beta = sideslip(delta, kParams), vs = sensor_speed(v, beta);
  const Eigen::Vector3d col(-dt * vs * std::sin(0.3 + beta), dt * vs * std::cos(0.3 + beta), 1.0);
  const Mat3 want = 0.04 * col * col.transpose();
  EXPECT_LT((p.cov - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Predict, RejectsInvalidStep)
{
  const EkfBelief b;
  for (double dt : {0.0, -0.01, 0.5000001, 1.0}) {
    try {
      predict(b, {}, dt, {}, kParams);
      FAIL() << dt;
    } catch (const Error & e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidDt);
    }
  }
  EXPECT_NO_THROW(predict(b, {}, 0.5, {}, kParams));
}

TEST(Update, ZeroInnovationShrinksCovariance)
{
  Mat3 cov;
  cov << 0.2, 0.01, 0.03, 0.01, 0.3, -0.02, 0.03, -0.02, 0.1;
  const EkfBelief b = belief(1.0, -1.0, 0.5, cov);
  const EkfBelief u = update(b, fix_at(1.0, -1.0, 0.0025, 0.0));
  EXPECT_LT((u.mean.vec() - b.mean.vec()).norm(), 1e-15);
  EXPECT_LT(u.cov.trace(), b.cov.trace());
}

TEST(Update, NearExactMeasurement)
{
  const EkfBelief b = belief(0.0, 0.0, 0.0, Mat3::Identity());
  const EkfBelief u = update(b, fix_at(2.5, -1.5, 1e-12, 0.0));
  EXPECT_NEAR(u.mean.x, 2.5, 1e-6);
  EXPECT_NEAR(u.mean.y, -1.5, 1e-6);
}

TEST(Update, ScalarGain)
{
  const EkfBelief b = belief(0.0, 0.0, 0.0, Mat3::Identity());
  const EkfBelief u = update(b, fix_at(1.0, 0.0, 1.0, 0.0));
  EXPECT_NEAR(u.mean.x, 0.5, 1e-15);
  EXPECT_NEAR(u.mean.y, 0.0, 1e-15);
  EXPECT_NEAR(u.cov(0, 0), 0.5, 1e-15);
  EXPECT_NEAR(u.cov(2, 2), 1.0, 1e-15);
}

TEST(Update, HeadingMovesThroughCrossCovariance)
{
  Mat3 cov = Mat3::Identity();
  cov(1, 2) = cov(2, 1) = 0.5;
  const EkfBelief b = belief(0.0, 0.0, 0.0, cov);
  const EkfBelief u = update(b, fix_at(0.0, 1.0, 1.0, 0.0));
  // Gain row for heading: 0.5 / (1 + 1) on the north innovation.
  EXPECT_NEAR(u.mean.psi, 0.25, 1e-15);
  const EkfBelief none = update(belief(0.0, 0.0, 0.0, Mat3::Identity()), fix_at(0.0, 1.0, 1.0, 0.0));
  EXPECT_EQ(none.mean.psi, 0.0);
}

TEST(Update, HugeNoiseLeavesBeliefUnchanged)
{
  Mat3 cov;
  cov << 0.2, 0.01, 0.03, 0.01, 0.3, -0.02, 0.03, -0.02, 0.1;
  const EkfBelief b = belief(1.0, -1.0, 0.5, cov);
  const EkfBelief u = update(b, fix_at(40.0, 30.0, 1e12, 0.0));
  EXPECT_LT((u.mean.vec() - b.mean.vec()).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LT((u.cov - b.cov).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Update, SingularInnovation)
{
  const EkfBelief b = belief(0.0, 0.0, 0.0, Mat3::Zero());
  GnssFix f = fix_at(1.0, 1.0, 0.0, 0.0);
  try {
    update(b, f);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularInnovation);
  }
  f.r = Eigen::Vector2d(1.0, 1e-14).asDiagonal();
  EXPECT_THROW(update(b, f), Error);
}

TEST(Covariance, StaysSymmetricPsdOverRandomSteps)
{
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> v(0.0, 0.7), d(-0.65, 0.65), dt(1e-3, 0.5), var(1e-6, 1.0),
    pos(-5.0, 5.0), coin(0.0, 1.0);
  const ProcessNoise noise;
  EkfBelief b = belief(0.0, 0.0, 0.0, Mat3::Identity() * 0.1);
  double worst = 1.0, asym = 0.0;
  for (int i = 0; i < 100000; ++i) {
    if (coin(rng) < 0.7) {
      b = predict(b, {v(rng), d(rng), 0.0}, dt(rng), noise, kParams);
    } else {
      GnssFix f = fix_at(b.mean.x + pos(rng), b.mean.y + pos(rng), var(rng), b.stamp);
      f.r(1, 1) = var(rng);
      b = update(b, f);
    }
    worst = std::min(worst, min_eig(b.cov));
    asym = std::max(asym, (b.cov - b.cov.transpose()).cwiseAbs().maxCoeff());
  }
  EXPECT_GT(worst, -1e-10);
  EXPECT_LE(asym, 1e-12);
}

TEST(Initialize, HeadingFromDisplacement)
{
  const std::vector<GnssFix> east{fix_at(0.0, 0.0, 0.0025, 0.0), fix_at(1.0, 0.0, 0.0025, 0.1)};
  const EkfBelief a = initialize(east);
  EXPECT_EQ(a.mean.psi, 0.0);
  EXPECT_EQ(a.mean.x, 1.0);
  EXPECT_EQ(a.stamp, 0.1);
  EXPECT_DOUBLE_EQ(a.cov(0, 0), 0.0025);
  EXPECT_NEAR(a.cov(2, 2), 0.25, 1e-15);
  EXPECT_EQ(a.cov(0, 2), 0.0);

  const std::vector<GnssFix> north{fix_at(0.0, 0.0, 0.0025, 0.0), fix_at(0.0, 2.0, 0.0025, 0.1)};
  EXPECT_NEAR(initialize(north).mean.psi, std::numbers::pi / 2.0, 1e-15);
}

TEST(Initialize, UsesFirstAndLastFix)
{
  const std::vector<GnssFix> fixes{fix_at(0.0, 0.0, 0.01, 0.0), fix_at(0.05, 0.1, 0.01, 0.1),
                                   fix_at(-1.0, -1.0, 0.04, 0.2)};
  const EkfBelief b = initialize(fixes);
  EXPECT_NEAR(b.mean.psi, -3.0 * std::numbers::pi / 4.0, 1e-15);
  EXPECT_EQ(b.mean.x, -1.0);
  EXPECT_EQ(b.cov(1, 1), 0.04);
}

TEST(Initialize, InsufficientBaseline)
{
  const std::vector<GnssFix> close{fix_at(0.0, 0.0, 0.0025, 0.0), fix_at(0.05, 0.0, 0.0025, 0.1)};
  const std::vector<GnssFix> single{fix_at(0.0, 0.0, 0.0025, 0.0)};
  for (const auto & fixes : {close, single}) {
    try {
      initialize(fixes);
      FAIL();
    } catch (const Error & e) {
      EXPECT_EQ(e.kind(), ErrorKind::InsufficientBaseline);
    }
  }
}

TEST(Initialize, WithHeadingPrior)
{
  const EkfBelief b = initialize_with_heading(fix_at(3.0, 4.0, 0.01, 2.0), 1.2, 0.1);
  EXPECT_EQ(b.mean.psi, 1.2);
  EXPECT_DOUBLE_EQ(b.cov(2, 2), 0.01);
  EXPECT_EQ(b.stamp, 2.0);
}

TEST(EkfFilter, DiscardsStaleFixes)
{
  Ekf ekf(kParams, {});
  EXPECT_FALSE(ekf.process_fix(fix_at(0.0, 0.0, 0.01, 0.0)));
  ekf.reset(initialize_with_heading(fix_at(0.0, 0.0, 0.01, 1.0), 0.0));
  EXPECT_FALSE(ekf.process_fix(fix_at(0.0, 0.0, 0.01, 0.9)));
  EXPECT_EQ(ekf.stale_fixes(), 1u);
  EXPECT_TRUE(ekf.process_fix(fix_at(0.0, 0.0, 0.01, 1.1)));
  EXPECT_EQ(ekf.fixes_used(), 1u);
  EXPECT_DOUBLE_EQ(ekf.belief().stamp, 1.1);
}

TEST(EkfFilter, LongGapIsSplitIntoValidSteps)
{
  Ekf ekf(kParams, {});
  ekf.reset(initialize_with_heading(fix_at(0.0, 0.0, 0.01, 0.0), 0.0));
  ekf.set_encoder({0.5, 0.0, 0.0});
  ekf.predict_to(2.3);
  EXPECT_NEAR(ekf.belief().mean.x, 1.15, 1e-12);
  EXPECT_DOUBLE_EQ(ekf.belief().stamp, 2.3);
}

// Straight driving east at 0.6 m/s, GNSS at 10 Hz with sigma 0.05 m.
TEST(EkfFilter, SmoothsStraightLineFixes)
{
  std::mt19937_64 rng(22);
  std::normal_distribution<double> noise(0.0, 0.05);
  const double v = 0.6, sigma = 0.05;
  Ekf ekf(kParams, {});
  ekf.set_encoder({v, 0.0, 0.0});
  std::vector<GnssFix> pending;
  double sq_est = 0.0, sq_raw = 0.0;
  int count = 0;
  for (int k = 0; k <= 600; ++k) {
    const double t = 0.1 * k;
    const double truth_x = v * t, truth_y = 0.0;
    const GnssFix f = fix_at(truth_x + noise(rng), truth_y + noise(rng), sigma * sigma, t);
    if (!ekf.initialized()) {
      pending.push_back(f);
      if ((f.z - pending.front().z).norm() >= 0.2) ekf.reset(initialize(pending));
      continue;
    }
    ASSERT_TRUE(ekf.process_fix(f));
    if (t < 5.0) continue;
    const EkfState & m = ekf.belief().mean;
    sq_est += std::pow(m.x - truth_x, 2) + std::pow(m.y - truth_y, 2);
    sq_raw += (f.z - Eigen::Vector2d(truth_x, truth_y)).squaredNorm();
    ++count;
  }
  const double rmse = std::sqrt(sq_est / count), raw = std::sqrt(sq_raw / count);
  EXPECT_LT(rmse, 0.05);
  EXPECT_LT(rmse, raw);
}

// Starting with a 0.8 rad heading error, a turn makes heading observable.
TEST(EkfFilter, HeadingConvergesThroughTurn)
{
  std::mt19937_64 rng(23);
  std::normal_distribution<double> noise(0.0, 0.05);
  const double v = 0.6, dt = 0.1;
  EkfState truth{0.0, 0.0, 0.0};
  Ekf ekf(kParams, {});
  ekf.reset(initialize_with_heading(fix_at(0.0, 0.0, 0.0025, 0.0), 0.8));
  for (int k = 1; k <= 400; ++k) {
    const double t = k * dt;
    const double delta = (t > 10.0 && t < 15.0) ? 0.3 : 0.0;
    for (int s = 0; s < 100; ++s) {
      truth = EkfState::from_vec(truth.vec() + (dt / 100.0) * ekf_dynamics(truth, v, delta, kParams));
    }
    ekf.set_encoder({v, delta, t - dt});
    ekf.process_fix(fix_at(truth.x + noise(rng), truth.y + noise(rng), 0.0025, t));
  }
  const double err = std::remainder(ekf.belief().mean.psi - truth.psi, 2.0 * std::numbers::pi);
  EXPECT_LT(std::abs(err), 0.1);
}

}  // namespace
