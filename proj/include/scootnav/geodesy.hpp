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

#ifndef SCOOTNAV_GEODESY_HPP
#define SCOOTNAV_GEODESY_HPP

#include "scootnav/error.hpp"

#include <Eigen/Core>

#include <cmath>
#include <numbers>

namespace scootnav::geodesy
{

namespace wgs84
{
inline constexpr double kSemiMajor = 6378137.0;
inline constexpr double kFlattening = 1.0 / 298.257223563;
inline constexpr double kSemiMinor = kSemiMajor * (1.0 - kFlattening);
inline constexpr double kEccentricitySq = kFlattening * (2.0 - kFlattening);
}  // namespace wgs84

struct GeodeticPoint
{
  double lat = 0.0;  // deg
  double lon = 0.0;  // deg
  double alt = 0.0;  // m above ellipsoid

  bool valid() const
  {
    return std::isfinite(lat) && std::isfinite(lon) && std::isfinite(alt) && lat >= -90.0 &&
           lat <= 90.0 && lon >= -180.0 && lon <= 180.0;
  }
};

struct EnuPoint
{
  double east = 0.0;
  double north = 0.0;
  double up = 0.0;
};

// Conversions run in long double: absolute ECEF coordinates are ~6.4e6 m, so
// double arithmetic alone leaves round-trip errors at the 1e-9 m level.
using Real = long double;
using Vec3R = Eigen::Matrix<Real, 3, 1>;
using Mat3R = Eigen::Matrix<Real, 3, 3>;

namespace detail
{
inline constexpr Real kDegToRad = std::numbers::pi_v<Real> / Real(180);

inline Vec3R geodetic_to_ecef(Real lat_rad, Real lon_rad, Real alt)
{
  const Real a = wgs84::kSemiMajor;
  const Real f = Real(1) / Real(298.257223563L);
  const Real e2 = f * (Real(2) - f);
  const Real sl = std::sin(lat_rad);
  const Real cl = std::cos(lat_rad);
  const Real n = a / std::sqrt(Real(1) - e2 * sl * sl);
  return {(n + alt) * cl * std::cos(lon_rad), (n + alt) * cl * std::sin(lon_rad),
          (n * (Real(1) - e2) + alt) * sl};
}

struct GeodeticRad
{
  Real lat;
  Real lon;
  Real alt;
};

// Fixed-point latitude iteration; contraction factor is roughly e^2 per step.
inline GeodeticRad ecef_to_geodetic(const Vec3R & ecef)
{
  const Real a = wgs84::kSemiMajor;
  const Real f = Real(1) / Real(298.257223563L);
  const Real e2 = f * (Real(2) - f);
  const Real x = ecef.x();
  const Real y = ecef.y();
  const Real z = ecef.z();
  const Real p = std::hypot(x, y);
  const Real lon = std::atan2(y, x);

  Real lat = std::atan2(z, p * (Real(1) - e2));
  Real n = a;
  Real alt = 0;
  for (int it = 0; it < 10; ++it) {
    const Real sl = std::sin(lat);
    n = a / std::sqrt(Real(1) - e2 * sl * sl);
    alt = (p > Real(1e-3)) ? p / std::cos(lat) - n : std::abs(z) - n * (Real(1) - e2);
    const Real next = std::atan2(z, p * (Real(1) - e2 * n / (n + alt)));
    const Real change = std::abs(next - lat);
    lat = next;
    if (change < Real(1e-15L)) {
      break;
    }
  }
  const Real sl = std::sin(lat);
  const Real cl = std::cos(lat);
  n = a / std::sqrt(Real(1) - e2 * sl * sl);
  // Projection-based height is well conditioned at every latitude.
  alt = p * cl + z * sl - n * (Real(1) - e2 * sl * sl);
  return {lat, lon, alt};
}
}  // namespace detail

/// ECEF coordinates in meters under WGS-84.
inline Eigen::Vector3d geodetic_to_ecef(const GeodeticPoint & p)
{
  const Vec3R v = detail::geodetic_to_ecef(
    Real(p.lat) * detail::kDegToRad, Real(p.lon) * detail::kDegToRad, Real(p.alt));
  return v.cast<double>();
}

inline GeodeticPoint ecef_to_geodetic(const Eigen::Vector3d & ecef)
{
  const auto g = detail::ecef_to_geodetic(ecef.cast<Real>());
  return {double(g.lat / detail::kDegToRad), double(g.lon / detail::kDegToRad), double(g.alt)};
}

/// Local tangent frame anchored at a geodetic origin.
class EnuFrame
{
public:
  EnuFrame() : EnuFrame(GeodeticPoint{}) {}

  explicit EnuFrame(const GeodeticPoint & origin) : origin_(origin)
  {
    if (!origin.valid()) {
      throw Error(ErrorKind::InvalidParams, "ENU origin outside valid lat/lon range");
    }
    const Real lat = Real(origin.lat) * detail::kDegToRad;
    const Real lon = Real(origin.lon) * detail::kDegToRad;
    origin_ecef_ = detail::geodetic_to_ecef(lat, lon, Real(origin.alt));
    const Real sl = std::sin(lat), cl = std::cos(lat);
    const Real so = std::sin(lon), co = std::cos(lon);
    // Rows are the east, north and up unit vectors expressed in ECEF.
    rotation_ << -so, co, 0,
                 -sl * co, -sl * so, cl,
                 cl * co, cl * so, sl;
  }

  const GeodeticPoint & origin() const { return origin_; }
  Eigen::Matrix3d rotation() const { return rotation_.cast<double>(); }

  EnuPoint to_enu(const GeodeticPoint & p) const
  {
    const Vec3R ecef = detail::geodetic_to_ecef(
      Real(p.lat) * detail::kDegToRad, Real(p.lon) * detail::kDegToRad, Real(p.alt));
    const Vec3R enu = rotation_ * (ecef - origin_ecef_);
    return {double(enu.x()), double(enu.y()), double(enu.z())};
  }

  GeodeticPoint from_enu(const EnuPoint & p) const
  {
    const Vec3R enu(Real(p.east), Real(p.north), Real(p.up));
    const Vec3R ecef = origin_ecef_ + rotation_.transpose() * enu;
    const auto g = detail::ecef_to_geodetic(ecef);
    return {double(g.lat / detail::kDegToRad), double(g.lon / detail::kDegToRad), double(g.alt)};
  }

private:
  GeodeticPoint origin_;
  Vec3R origin_ecef_;
  Mat3R rotation_;
};

inline EnuPoint to_enu(const EnuFrame & frame, const GeodeticPoint & p) { return frame.to_enu(p); }
inline GeodeticPoint from_enu(const EnuFrame & frame, const EnuPoint & p)
{
  return frame.from_enu(p);
}

}  // namespace scootnav::geodesy

#endif  // SCOOTNAV_GEODESY_HPP
