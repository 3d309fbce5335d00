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

#ifndef SCOOTNAV_LOCALIZATION_HPP
#define SCOOTNAV_LOCALIZATION_HPP

#include "scootnav/error.hpp"
#include "scootnav/vehicle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <span>

namespace scootnav
{

struct EkfBelief
{
  EkfState mean;
  Mat3 cov = Mat3::Identity();
  double stamp = 0.0;
};

struct GnssFix
{
  Eigen::Vector2d z = Eigen::Vector2d::Zero();
  Eigen::Matrix2d r = Eigen::Matrix2d::Identity();
  double stamp = 0.0;
};

struct EncoderSample
{
  double v = 0.0;
  double delta = 0.0;
  double stamp = 0.0;
};

struct ProcessNoise
{
  // Spectral density; the discrete covariance added per step is dt * q.
  Mat3 q = Eigen::Vector3d(0.01, 0.01, 0.02).asDiagonal();
};

inline constexpr double kInitialHeadingSigma = 0.5;

inline void symmetrize(Mat3 & m) { m = 0.5 * (m + m.transpose()).eval(); }

/// Euler prediction through the single-track model.
inline EkfBelief predict(
  const EkfBelief & b, const EncoderSample & enc, double dt, const ProcessNoise & noise,
  const VehicleParams & params)
{
  if (!(dt > 0.0 && dt <= 0.5)) throw Error(ErrorKind::InvalidDt, "predict dt must lie in (0, 0.5]");
  EkfBelief out = b;
  const Vec3 rate = ekf_dynamics(b.mean, enc.v, enc.delta, params);
  out.mean = EkfState::from_vec(b.mean.vec() + dt * rate);
  const Mat3 f = Mat3::Identity() + dt * ekf_dynamics_jacobian(b.mean, enc.v, enc.delta, params);
  out.cov = f * b.cov * f.transpose() + dt * noise.q;
  symmetrize(out.cov);
  out.stamp = b.stamp + dt;
  return out;
}

/// Linear position update (Joseph form). Heading moves through the
/// cross-covariance only.
inline EkfBelief update(const EkfBelief & b, const GnssFix & fix)
{
  Eigen::Matrix<double, 2, 3> h = Eigen::Matrix<double, 2, 3>::Zero();
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  const Eigen::Matrix2d s = h * b.cov * h.transpose() + fix.r;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(0.5 * (s + s.transpose()));
  const double lo = eig.eigenvalues()(0), hi = eig.eigenvalues()(1);
  if (!(lo > 0.0) || hi / lo > 1e12) {
    throw Error(ErrorKind::SingularInnovation, "innovation covariance is not invertible");
  }
  const Eigen::Matrix<double, 3, 2> k = b.cov * h.transpose() * s.inverse();
  EkfBelief out = b;
  out.mean = EkfState::from_vec(b.mean.vec() + k * (fix.z - h * b.mean.vec()));
  const Mat3 ikh = Mat3::Identity() - k * h;
  out.cov = ikh * b.cov * ikh.transpose() + k * fix.r * k.transpose();
  symmetrize(out.cov);
  return out;
}

/// Position from the last fix, heading from the displacement of the first and last.
inline EkfBelief initialize(std::span<const GnssFix> fixes)
{
  if (fixes.size() < 2) {
    throw Error(ErrorKind::InsufficientBaseline, "initialization needs at least two fixes");
  }
  const GnssFix & first = fixes.front();
  const GnssFix & last = fixes.back();
  const Eigen::Vector2d d = last.z - first.z;
  if (d.norm() < 0.2) {
    throw Error(ErrorKind::InsufficientBaseline, "fixes are closer than 0.2 m");
  }
  EkfBelief b;
  b.mean = {last.z.x(), last.z.y(), std::atan2(d.y(), d.x())};
  b.cov = Mat3::Zero();
  b.cov.topLeftCorner<2, 2>() = last.r;
  b.cov(2, 2) = kInitialHeadingSigma * kInitialHeadingSigma;
  b.stamp = last.stamp;
  return b;
}

/// Single fix plus an external heading prior (vehicle parked at a known orientation).
inline EkfBelief initialize_with_heading(
  const GnssFix & fix, double heading, double heading_sigma = kInitialHeadingSigma)
{
  EkfBelief b;
  b.mean = {fix.z.x(), fix.z.y(), heading};
  b.cov = Mat3::Zero();
  b.cov.topLeftCorner<2, 2>() = fix.r;
  b.cov(2, 2) = heading_sigma * heading_sigma;
  b.stamp = fix.stamp;
  return b;
}

/// Sequential filter: predicts to each fix with the latest encoder sample held.
class Ekf
{
public:
  Ekf(VehicleParams params, ProcessNoise noise) : params_(params), noise_(noise) {}

  bool initialized() const { return belief_.has_value(); }
  const EkfBelief & belief() const { return *belief_; }
  void reset(const EkfBelief & b) { belief_ = b; }

  std::size_t stale_fixes() const { return stale_fixes_; }
  std::size_t fixes_used() const { return fixes_used_; }

  void set_encoder(const EncoderSample & enc) { encoder_ = enc; }
  const EncoderSample & encoder() const { return encoder_; }

  /// Advances to `t` without a measurement; long gaps are split into substeps.
  void predict_to(double t)
  {
    if (!belief_) return;
    double remaining = t - belief_->stamp;
    while (remaining > 1e-12) {
      const double dt = std::min(remaining, 0.5);
      const double target = belief_->stamp + dt;
      belief_ = predict(*belief_, encoder_, dt, noise_, params_);
      belief_->stamp = target;
      remaining = t - belief_->stamp;
    }
    belief_->stamp = std::max(belief_->stamp, t);
  }

  /// Predict-then-update. Returns false when the fix is older than the belief.
  bool process_fix(const GnssFix & fix)
  {
    if (!belief_) return false;
    if (fix.stamp < belief_->stamp) {
      ++stale_fixes_;
      return false;
    }
    predict_to(fix.stamp);
    belief_ = update(*belief_, fix);
    ++fixes_used_;
    return true;
  }

private:
  VehicleParams params_;
  ProcessNoise noise_;
  std::optional<EkfBelief> belief_;
  EncoderSample encoder_;
  std::size_t stale_fixes_ = 0;
  std::size_t fixes_used_ = 0;
};

}  // namespace scootnav

#endif  // SCOOTNAV_LOCALIZATION_HPP
