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

#ifndef SCOOTNAV_VEHICLE_HPP
#define SCOOTNAV_VEHICLE_HPP

#include "scootnav/error.hpp"

#include <Eigen/Core>

#include <cmath>

namespace scootnav
{

struct VehicleParams
{
  double wheelbase = 0.9;       // L, front to rear axle [m]
  double rear_to_sensor = 0.45;  // l_r, rear axle to GNSS antenna [m]
  double gravity = 9.81;

  void validate() const
  {
    if (!(wheelbase > 0.0)) throw Error(ErrorKind::InvalidParams, "wheelbase must be > 0");
    if (!(rear_to_sensor >= 0.0 && rear_to_sensor <= wheelbase)) {
      throw Error(ErrorKind::InvalidParams, "rear_to_sensor must lie in [0, wheelbase]");
    }
    if (!(gravity > 0.0)) throw Error(ErrorKind::InvalidParams, "gravity must be > 0");
  }
};

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat62 = Eigen::Matrix<double, 6, 2>;

/// Localization state: GNSS antenna position and unwrapped heading.
struct EkfState
{
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;

  Vec3 vec() const { return {x, y, psi}; }
  static EkfState from_vec(const Vec3 & v) { return {v(0), v(1), v(2)}; }
};

/// Controller state with the heading embedded as (cos, sin).
struct MpcState
{
  double px = 0.0;  // front axle
  double py = 0.0;
  double v = 0.0;  // speed at the rear axle
  double cos_psi = 1.0;
  double sin_psi = 0.0;
  double delta = 0.0;

  enum Index { kPx = 0, kPy, kV, kCos, kSin, kDelta };

  Vec6 vec() const { return (Vec6() << px, py, v, cos_psi, sin_psi, delta).finished(); }
  static MpcState from_vec(const Vec6 & v) { return {v(0), v(1), v(2), v(3), v(4), v(5)}; }
  double heading() const { return std::atan2(sin_psi, cos_psi); }
  Eigen::Vector2d front() const { return {px, py}; }
};

struct MpcInput
{
  double accel = 0.0;       // rear-axle acceleration [m/s^2]
  double steer_rate = 0.0;  // [rad/s]

  Eigen::Vector2d vec() const { return {accel, steer_rate}; }
  static MpcInput from_vec(const Eigen::Vector2d & u) { return {u(0), u(1)}; }
};

struct AxlePose
{
  double x = 0.0;
  double y = 0.0;
  double psi = 0.0;
};

// Side slip at the antenna mount point.
inline double sideslip(double delta, const VehicleParams & p)
{
  return std::atan(p.rear_to_sensor * std::tan(delta) / p.wheelbase);
}

inline double sensor_speed(double v, double beta)
{
  const double t = std::tan(beta);
  return v * std::sqrt(1.0 + t * t);
}

inline Vec3 ekf_dynamics(const EkfState & x, double v, double delta, const VehicleParams & p)
{
  const double beta = sideslip(delta, p);
  const double vs = sensor_speed(v, beta);
  return {vs * std::cos(x.psi + beta), vs * std::sin(x.psi + beta),
          v * std::tan(delta) / p.wheelbase};
}

/// d(ekf_dynamics)/dx; only the heading column is non-zero.
inline Mat3 ekf_dynamics_jacobian(
  const EkfState & x, double v, double delta, const VehicleParams & p)
{
  const double beta = sideslip(delta, p);
  const double vs = sensor_speed(v, beta);
  Mat3 j = Mat3::Zero();
  j(0, 2) = -vs * std::sin(x.psi + beta);
  j(1, 2) = vs * std::cos(x.psi + beta);
  return j;
}

inline Vec6 mpc_dynamics(const MpcState & x, const MpcInput & u, const VehicleParams & p)
{
  const double yaw_rate = x.v * std::tan(x.delta) / p.wheelbase;
  Vec6 dx;
  dx << x.v * x.cos_psi - p.wheelbase * x.sin_psi * yaw_rate,
        x.v * x.sin_psi + p.wheelbase * x.cos_psi * yaw_rate,
        u.accel,
        -x.sin_psi * yaw_rate,
        x.cos_psi * yaw_rate,
        u.steer_rate;
  return dx;
}

struct MpcDynamicsJacobian
{
  Mat6 dx;
  Mat62 du;
};

inline MpcDynamicsJacobian mpc_dynamics_jacobian(
  const MpcState & x, const MpcInput &, const VehicleParams & p)
{
  const double L = p.wheelbase;
  const double t = std::tan(x.delta);
  const double sec2 = 1.0 + t * t;
  const double c = x.cos_psi, s = x.sin_psi, v = x.v;
  // Rates written out: f0 = v (c - s t), f1 = v (s + c t), f3 = -s v t / L, f4 = c v t / L.
  MpcDynamicsJacobian j{Mat6::Zero(), Mat62::Zero()};
  j.dx(0, 2) = c - s * t;
  j.dx(0, 3) = v;
  j.dx(0, 4) = -v * t;
  j.dx(0, 5) = -s * v * sec2;
  j.dx(1, 2) = s + c * t;
  j.dx(1, 3) = v * t;
  j.dx(1, 4) = v;
  j.dx(1, 5) = c * v * sec2;
  j.dx(3, 2) = -s * t / L;
  j.dx(3, 4) = -v * t / L;
  j.dx(3, 5) = -s * v * sec2 / L;
  j.dx(4, 2) = c * t / L;
  j.dx(4, 3) = v * t / L;
  j.dx(4, 5) = c * v * sec2 / L;
  j.du(2, 0) = 1.0;
  j.du(5, 1) = 1.0;
  return j;
}

enum class Integrator { Euler, Rk4 };

namespace detail
{
inline void check_finite(const Vec6 & v)
{
  if (!v.allFinite()) throw Error(ErrorKind::NonFiniteState, "integration produced a non-finite state");
}

/// Scales (cos, sin) back onto the unit circle; returns the Jacobian of that map.
inline Mat6 renormalize(Vec6 & x)
{
  const double r = std::hypot(x(3), x(4));
  Mat6 dn = Mat6::Identity();
  const double nc = x(3) / r, ns = x(4) / r;
  dn(3, 3) = (1.0 - nc * nc) / r;
  dn(3, 4) = -nc * ns / r;
  dn(4, 3) = -nc * ns / r;
  dn(4, 4) = (1.0 - ns * ns) / r;
  x(3) = nc;
  x(4) = ns;
  return dn;
}
}  // namespace detail

/// One integration step followed by heading renormalization.
inline MpcState integrate(
  const MpcState & x, const MpcInput & u, double dt, Integrator method, const VehicleParams & p)
{
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidDt, "integration step must be positive");
  const Vec6 x0 = x.vec();
  Vec6 next;
  if (method == Integrator::Euler) {
    next = x0 + dt * mpc_dynamics(x, u, p);
  } else {
    const auto f = [&](const Vec6 & s) { return mpc_dynamics(MpcState::from_vec(s), u, p); };
    const Vec6 k1 = f(x0);
    const Vec6 k2 = f(x0 + 0.5 * dt * k1);
    const Vec6 k3 = f(x0 + 0.5 * dt * k2);
    const Vec6 k4 = f(x0 + dt * k3);
    next = x0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  detail::check_finite(next);
  detail::renormalize(next);
  return MpcState::from_vec(next);
}

/// RK4 shooting step with exact sensitivities of the (renormalized) result.
struct ShootingStep
{
  Vec6 next;
  Mat6 dx;
  Mat62 du;
};

inline ShootingStep rk4_with_sensitivities(
  const Vec6 & x0, const Eigen::Vector2d & u0, double dt, const VehicleParams & p)
{
  const MpcInput u = MpcInput::from_vec(u0);
  const auto eval = [&](const Vec6 & s, const Mat6 & sx, const Mat62 & su, Vec6 & k, Mat6 & kx,
                        Mat62 & ku) {
    const MpcState st = MpcState::from_vec(s);
    k = mpc_dynamics(st, u, p);
    const auto j = mpc_dynamics_jacobian(st, u, p);
    kx = j.dx * sx;
    ku = j.dx * su + j.du;
  };
  Vec6 k1, k2, k3, k4;
  Mat6 k1x, k2x, k3x, k4x;
  Mat62 k1u, k2u, k3u, k4u;
  const Mat6 eye = Mat6::Identity();
  const Mat62 zero = Mat62::Zero();
  eval(x0, eye, zero, k1, k1x, k1u);
  eval(x0 + 0.5 * dt * k1, eye + 0.5 * dt * k1x, 0.5 * dt * k1u, k2, k2x, k2u);
  eval(x0 + 0.5 * dt * k2, eye + 0.5 * dt * k2x, 0.5 * dt * k2u, k3, k3x, k3u);
  eval(x0 + dt * k3, eye + dt * k3x, dt * k3u, k4, k4x, k4u);

  ShootingStep out;
  out.next = x0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  out.dx = eye + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
  out.du = dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
  detail::check_finite(out.next);
  const Mat6 dn = detail::renormalize(out.next);
  out.dx = dn * out.dx;
  out.du = dn * out.du;
  return out;
}

inline AxlePose sensor_to_front(const EkfState & x, const VehicleParams & p)
{
  const double arm = p.wheelbase - p.rear_to_sensor;
  return {x.x + arm * std::cos(x.psi), x.y + arm * std::sin(x.psi), x.psi};
}

inline AxlePose sensor_to_rear(const EkfState & x, const VehicleParams & p)
{
  return {x.x - p.rear_to_sensor * std::cos(x.psi), x.y - p.rear_to_sensor * std::sin(x.psi), x.psi};
}

/// Steady-state lean angle of the balancing controller.
inline double roll_setpoint(double v, double delta, const VehicleParams & p)
{
  return std::atan(v * v * std::tan(delta) / (p.wheelbase * p.gravity));
}

/// Time derivative of roll_setpoint given the rates of v and delta.
inline double roll_setpoint_rate(
  double v, double delta, double accel, double steer_rate, const VehicleParams & p)
{
  const double lg = p.wheelbase * p.gravity;
  const double t = std::tan(delta);
  const double c = std::cos(delta);
  const double num = 2.0 * v * t * accel + v * v / (c * c) * steer_rate;
  const double den = lg * lg + v * v * v * v * t * t;
  return lg * num / den;
}

/// Gradient of roll_setpoint_rate with respect to (v, delta, accel, steer_rate).
inline Eigen::Vector4d roll_setpoint_rate_gradient(
  double v, double delta, double accel, double steer_rate, const VehicleParams & p)
{
  const double lg = p.wheelbase * p.gravity;
  const double t = std::tan(delta);
  const double sec2 = 1.0 + t * t;
  const double num = 2.0 * v * t * accel + v * v * sec2 * steer_rate;
  const double den = lg * lg + v * v * v * v * t * t;
  const Eigen::Vector4d dnum(
    2.0 * t * accel + 2.0 * v * sec2 * steer_rate,
    2.0 * v * accel * sec2 + 2.0 * v * v * sec2 * t * steer_rate,
    2.0 * v * t,
    v * v * sec2);
  const Eigen::Vector4d dden(4.0 * v * v * v * t * t, 2.0 * v * v * v * v * t * sec2, 0.0, 0.0);
  return lg * (dnum * den - num * dden) / (den * den);
}

}  // namespace scootnav

#endif  // SCOOTNAV_VEHICLE_HPP
