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

#ifndef SCOOTNAV_PATH_HPP
#define SCOOTNAV_PATH_HPP

#include "scootnav/error.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace scootnav
{

using Point2 = Eigen::Vector2d;

/// Straight path piece with a corridor of half-width `half_width` around it.
struct Segment
{
  Point2 a;
  Point2 b;
  double half_width = 0.0;

  double length() const { return (b - a).norm(); }
  double heading() const { return std::atan2(b.y() - a.y(), b.x() - a.x()); }
};

struct PathProjection
{
  double s = 0.0;
  std::size_t seg_index = 0;  // zero-based
  Point2 closest = Point2::Zero();
  double distance = 0.0;
};

struct PathSample
{
  Point2 point;
  double heading = 0.0;
};

/// Clamped projection parameter of `p` onto [a, b].
inline double segment_parameter(const Point2 & p, const Segment & seg)
{
  const Point2 ab = seg.b - seg.a;
  const double h = (p - seg.a).dot(ab) / ab.squaredNorm();
  return std::max(std::min(h, 1.0), 0.0);
}

inline Point2 segment_closest(const Point2 & p, const Segment & seg)
{
  const double h = segment_parameter(p, seg);
  return (1.0 - h) * seg.a + h * seg.b;
}

/// Normalized quadratic signed distance: 1 on the centerline, 0 on the
/// capsule boundary, negative outside.
inline double segment_sdf(const Point2 & p, const Segment & seg)
{
  const double w2 = seg.half_width * seg.half_width;
  return (w2 - (p - segment_closest(p, seg)).squaredNorm()) / w2;
}

/// Gradient of segment_sdf with respect to the point. The closest-point
/// parameter is stationary in the interior and constant when clamped, so only
/// the explicit dependence on p survives.
inline Point2 segment_sdf_gradient(const Point2 & p, const Segment & seg)
{
  const double w2 = seg.half_width * seg.half_width;
  return -2.0 * (p - segment_closest(p, seg)) / w2;
}

class Path
{
public:
  Path(std::vector<Point2> waypoints, std::span<const double> half_widths)
  : waypoints_(std::move(waypoints))
  {
    if (waypoints_.size() < 2) {
      throw Error(ErrorKind::TooFewWaypoints, "a path needs at least two waypoints");
    }
    const std::size_t count = waypoints_.size() - 1;
    if (half_widths.size() != count) {
      throw Error(
        ErrorKind::InvalidParams, "expected " + std::to_string(count) + " half widths, got " +
                                    std::to_string(half_widths.size()));
    }
    segments_.reserve(count);
    cumulative_.reserve(count + 1);
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const Segment seg{waypoints_[i], waypoints_[i + 1], half_widths[i]};
      if (!seg.a.allFinite() || !seg.b.allFinite()) {
        throw Error(ErrorKind::InvalidParams, "non-finite waypoint " + std::to_string(i));
      }
      if (!(seg.length() > 1e-6)) {
        throw Error(
          ErrorKind::DegenerateSegment,
          "segment " + std::to_string(i) + " is shorter than 1e-6 m");
      }
      if (!(seg.half_width > 0.0) || !std::isfinite(seg.half_width)) {
        throw Error(
          ErrorKind::NonPositiveWidth,
          "segment " + std::to_string(i) + " has half width " + std::to_string(seg.half_width));
      }
      cumulative_.push_back(s);
      s += seg.length();
      segments_.push_back(seg);
    }
    cumulative_.push_back(s);
  }

  const std::vector<Segment> & segments() const { return segments_; }
  const std::vector<Point2> & waypoints() const { return waypoints_; }
  std::size_t size() const { return segments_.size(); }

  /// Arc length at the start of segment i; index size() gives the total.
  double start_s(std::size_t i) const { return cumulative_.at(i); }
  double total_length() const { return cumulative_.back(); }

  double min_half_width() const
  {
    double w = segments_.front().half_width;
    for (const auto & seg : segments_) w = std::min(w, seg.half_width);
    return w;
  }

private:
  std::vector<Point2> waypoints_;
  std::vector<Segment> segments_;
  std::vector<double> cumulative_;
};

inline Path build_path(std::vector<Point2> waypoints, std::span<const double> half_widths)
{
  return Path(std::move(waypoints), half_widths);
}

inline Path build_path(std::vector<Point2> waypoints, double half_width)
{
  const std::vector<double> widths(waypoints.empty() ? 0 : waypoints.size() - 1, half_width);
  return Path(std::move(waypoints), widths);
}

struct SdfValue
{
  double value = 0.0;
  std::size_t seg_index = 0;  // active segment
};

/// Max over segments; ties resolve to the larger segment index.
inline SdfValue path_sdf_active(const Point2 & p, const Path & path)
{
  SdfValue best{segment_sdf(p, path.segments().front()), 0};
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double v = segment_sdf(p, path.segments()[i]);
    if (v >= best.value) best = {v, i};
  }
  return best;
}

inline double path_sdf(const Point2 & p, const Path & path) { return path_sdf_active(p, path).value; }

/// Subgradient of path_sdf taken from the active segment.
inline Point2 path_sdf_gradient(const Point2 & p, const Path & path)
{
  return segment_sdf_gradient(p, path.segments()[path_sdf_active(p, path).seg_index]);
}

/// Closest point over all segments. Equidistant candidates resolve to the
/// larger arc length so progress never moves backwards at corners.
inline PathProjection project(const Point2 & p, const Path & path)
{
  PathProjection best;
  bool have = false;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Segment & seg = path.segments()[i];
    const double h = segment_parameter(p, seg);
    const Point2 q = (1.0 - h) * seg.a + h * seg.b;
    const double dist = (p - q).norm();
    const double s = path.start_s(i) + h * seg.length();
    if (!have || dist < best.distance || (dist == best.distance && s > best.s)) {
      best = {s, i, q, dist};
      have = true;
    }
  }
  return best;
}

/// Point and driving direction at arc length s (clamped to the path).
/// Interior waypoints report the outgoing segment's heading.
inline PathSample sample(const Path & path, double s)
{
  const double total = path.total_length();
  if (!(s > 0.0)) {
    const Segment & first = path.segments().front();
    return {first.a, first.heading()};
  }
  if (s >= total) {
    const Segment & last = path.segments().back();
    return {last.b, last.heading()};
  }
  // First segment whose start exceeds s, minus one: an interior waypoint maps
  // to the segment that starts there.
  std::size_t lo = 0, hi = path.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (path.start_s(mid) <= s) lo = mid; else hi = mid;
  }
  const Segment & seg = path.segments()[lo];
  const double h = (s - path.start_s(lo)) / seg.length();
  return {(1.0 - h) * seg.a + h * seg.b, seg.heading()};
}

}  // namespace scootnav

#endif  // SCOOTNAV_PATH_HPP
