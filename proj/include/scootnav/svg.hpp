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

#ifndef SCOOTNAV_SVG_HPP
#define SCOOTNAV_SVG_HPP

#include "scootnav/path.hpp"
#include "scootnav/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace scootnav::svg
{

struct Series
{
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

inline std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string tick(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

namespace detail
{

struct Box
{
  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();

  void add(double x, double y)
  {
    if (!std::isfinite(x) || !std::isfinite(y)) return;
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }

  void pad(double frac)
  {
    if (!std::isfinite(x0) || !std::isfinite(x1)) {
      x0 = 0.0;
      x1 = 1.0;
    }
    if (!std::isfinite(y0) || !std::isfinite(y1)) {
      y0 = 0.0;
      y1 = 1.0;
    }
    if (x1 - x0 < 1e-9) x1 = x0 + 1.0;
    if (y1 - y0 < 1e-9) {
      y0 -= 0.5;
      y1 += 0.5;
    }
    const double dx = (x1 - x0) * frac, dy = (y1 - y0) * frac;
    x0 -= dx;
    x1 += dx;
    y0 -= dy;
    y1 += dy;
  }
};

// Maps data coordinates into a plot area with y pointing up.
struct Frame
{
  Box box;
  double left, top, width, height;

  double px(double x) const { return left + (x - box.x0) / (box.x1 - box.x0) * width; }
  double py(double y) const { return top + height - (y - box.y0) / (box.y1 - box.y0) * height; }
};

inline std::string polyline(const Frame & f, const Series & s)
{
  std::string pts;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
    pts += num(f.px(s.x[i])) + "," + num(f.py(s.y[i])) + " ";
  }
  std::string out = "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"";
  if (s.dashed) out += " stroke-dasharray=\"6,4\"";
  return out + " points=\"" + pts + "\"/>\n";
}

inline double nice_step(double span)
{
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (const double m : {1.0, 2.0, 5.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

inline std::string axes(const Frame & f, const std::string & xlabel, const std::string & ylabel)
{
  std::string out;
  out += "<rect x=\"" + num(f.left) + "\" y=\"" + num(f.top) + "\" width=\"" + num(f.width) + "\" height=\"" +
         num(f.height) + "\" fill=\"none\" stroke=\"#444\"/>\n";
  const double sx = nice_step(f.box.x1 - f.box.x0), sy = nice_step(f.box.y1 - f.box.y0);
  for (double x = std::ceil(f.box.x0 / sx) * sx; x <= f.box.x1; x += sx) {
    out += "<line x1=\"" + num(f.px(x)) + "\" y1=\"" + num(f.top) + "\" x2=\"" + num(f.px(x)) + "\" y2=\"" +
           num(f.top + f.height) + "\" stroke=\"#ddd\"/>\n";
    out += "<text x=\"" + num(f.px(x)) + "\" y=\"" + num(f.top + f.height + 16) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + tick(x) + "</text>\n";
  }
  for (double y = std::ceil(f.box.y0 / sy) * sy; y <= f.box.y1; y += sy) {
    out += "<line x1=\"" + num(f.left) + "\" y1=\"" + num(f.py(y)) + "\" x2=\"" + num(f.left + f.width) +
           "\" y2=\"" + num(f.py(y)) + "\" stroke=\"#ddd\"/>\n";
    out += "<text x=\"" + num(f.left - 6) + "\" y=\"" + num(f.py(y) + 4) +
           "\" font-size=\"11\" text-anchor=\"end\">" + tick(y) + "</text>\n";
  }
  out += "<text x=\"" + num(f.left + f.width / 2) + "\" y=\"" + num(f.top + f.height + 34) +
         "\" font-size=\"13\" text-anchor=\"middle\">" + xlabel + "</text>\n";
  out += "<text transform=\"translate(" + num(f.left - 56) + "," + num(f.top + f.height / 2) +
         ") rotate(-90)\" font-size=\"13\" text-anchor=\"middle\">" + ylabel + "</text>\n";
  return out;
}

inline std::string legend(const Frame & f, std::span<const Series> series)
{
  std::string out;
  double rows = 0.0;
  std::size_t longest = 0;
  for (const auto & s : series) {
    if (s.label.empty()) continue;
    rows += 1.0;
    longest = std::max(longest, s.label.size());
  }
  if (rows == 0.0) return out;
  out += "<rect x=\"" + num(f.left + 4) + "\" y=\"" + num(f.top + 2) + "\" width=\"" +
         num(44.0 + 7.0 * static_cast<double>(longest)) + "\" height=\"" + num(16.0 * rows + 4.0) +
         "\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"#bbb\"/>\n";
  double y = f.top + 14;
  for (const auto & s : series) {
    if (s.label.empty()) continue;
    out += "<line x1=\"" + num(f.left + 10) + "\" y1=\"" + num(y - 4) + "\" x2=\"" + num(f.left + 34) +
           "\" y2=\"" + num(y - 4) + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"" +
           (s.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
    out += "<text x=\"" + num(f.left + 40) + "\" y=\"" + num(y) + "\" font-size=\"12\">" + s.label + "</text>\n";
    y += 16;
  }
  return out;
}

inline std::string header(double w, double h, const std::string & title)
{
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
         "<text x=\"" + num(w / 2) + "\" y=\"22\" font-size=\"15\" text-anchor=\"middle\">" + title + "</text>\n";
}

}  // namespace detail

/// Stacked line plots sharing the x axis.
inline std::string line_plot(
  const std::string & title, const std::string & xlabel, std::span<const std::string> ylabels,
  const std::vector<std::vector<Series>> & panels)
{
  const double w = 760, panel_h = 220, gap = 60;
  const double h = 40 + static_cast<double>(panels.size()) * (panel_h + gap);
  std::string out = detail::header(w, h, title);
  detail::Box xr;
  for (const auto & panel : panels) {
    for (const auto & s : panel) {
      for (std::size_t i = 0; i < s.x.size(); ++i) xr.add(s.x[i], 0.0);
    }
  }
  for (std::size_t p = 0; p < panels.size(); ++p) {
    detail::Box box;
    for (const auto & s : panels[p]) {
      for (std::size_t i = 0; i < s.x.size(); ++i) box.add(s.x[i], s.y[i]);
    }
    box.x0 = xr.x0;
    box.x1 = xr.x1;
    box.pad(0.04);
    const detail::Frame f{box, 80, 40 + static_cast<double>(p) * (panel_h + gap), w - 110, panel_h};
    out += detail::axes(f, p + 1 == panels.size() ? xlabel : "", ylabels[p]);
    for (const auto & s : panels[p]) out += detail::polyline(f, s);
    out += detail::legend(f, panels[p]);
  }
  return out + "</svg>\n";
}

/// Corridor outline (capsule union drawn per segment) plus trajectories, equal axis scale.
inline std::string position_plot(const std::string & title, const Path & path, const std::vector<Series> & tracks)
{
  detail::Box box;
  for (const auto & seg : path.segments()) {
    box.add(seg.a.x() - seg.half_width, seg.a.y() - seg.half_width);
    box.add(seg.a.x() + seg.half_width, seg.a.y() + seg.half_width);
    box.add(seg.b.x() - seg.half_width, seg.b.y() - seg.half_width);
    box.add(seg.b.x() + seg.half_width, seg.b.y() + seg.half_width);
  }
  for (const auto & s : tracks) {
    for (std::size_t i = 0; i < s.x.size(); ++i) box.add(s.x[i], s.y[i]);
  }
  box.pad(0.05);
  const double plot_w = 640;
  const double scale = plot_w / (box.x1 - box.x0);
  const double plot_h = std::clamp((box.y1 - box.y0) * scale, 120.0, 900.0);
  // Equalize scales by widening whichever range is short.
  const double yspan = plot_h / scale;
  const double yc = 0.5 * (box.y0 + box.y1);
  box.y0 = yc - 0.5 * yspan;
  box.y1 = yc + 0.5 * yspan;
  const double w = plot_w + 110, h = plot_h + 100;
  std::string out = detail::header(w, h, title);
  const detail::Frame f{box, 80, 40, plot_w, plot_h};
  out += detail::axes(f, "east [m]", "north [m]");
  for (const auto & seg : path.segments()) {
    const double r = seg.half_width * scale;
    out += "<line x1=\"" + num(f.px(seg.a.x())) + "\" y1=\"" + num(f.py(seg.a.y())) + "\" x2=\"" +
           num(f.px(seg.b.x())) + "\" y2=\"" + num(f.py(seg.b.y())) + "\" stroke=\"#cfe3f7\" stroke-width=\"" +
           num(2 * r) + "\" stroke-linecap=\"round\"/>\n";
  }
  Series center{"centerline", "#7a7a7a", {}, {}, true};
  for (const auto & p : path.waypoints()) {
    center.x.push_back(p.x());
    center.y.push_back(p.y());
  }
  out += detail::polyline(f, center);
  for (const auto & s : tracks) out += detail::polyline(f, s);
  std::vector<Series> all{Series{"corridor", "#cfe3f7", {}, {}, false}, center};
  all.insert(all.end(), tracks.begin(), tracks.end());
  out += detail::legend(f, all);
  return out + "</svg>\n";
}

inline std::string run_position_svg(const RunLog & log, const Path & path)
{
  Series front{"front axle", "#d62728", {}, {}, false};
  Series est{"EKF estimate", "#1f77b4", {}, {}, true};
  for (const auto & r : log.plant) {
    front.x.push_back(r.front_x);
    front.y.push_back(r.front_y);
  }
  for (const auto & r : log.ekf) {
    est.x.push_back(r.mean.x);
    est.y.push_back(r.mean.y);
  }
  return position_plot("Position in the corridor", path, {front, est});
}

inline std::string run_vel_steer_svg(const RunLog & log, const OcpLimits & limits)
{
  Series v{"v", "#1f77b4", {}, {}, false}, vc{"v command", "#ff7f0e", {}, {}, true};
  Series lim{"curve speed limit", "#2ca02c", {}, {}, true};
  Series d{"delta", "#1f77b4", {}, {}, false}, dc{"delta command", "#ff7f0e", {}, {}, true};
  for (const auto & r : log.plant) {
    v.x.push_back(r.t);
    v.y.push_back(r.state.v);
    vc.x.push_back(r.t);
    vc.y.push_back(r.v_cmd);
    lim.x.push_back(r.t);
    lim.y.push_back(curve_speed_limit(r.state.delta, limits));
    d.x.push_back(r.t);
    d.y.push_back(r.state.delta);
    dc.x.push_back(r.t);
    dc.y.push_back(r.delta_cmd);
  }
  const std::vector<std::string> labels{"speed [m/s]", "steering [rad]"};
  return line_plot("Velocity and steering", "time [s]", labels, {{v, vc, lim}, {d, dc}});
}

inline std::string run_roll_svg(const RunLog & log, double roll_rate_max)
{
  Series roll{"roll set point", "#1f77b4", {}, {}, false};
  Series rate{"roll set point rate", "#d62728", {}, {}, false};
  const double lim = roll_rate_max * 180.0 / std::numbers::pi;
  const double t_end = log.plant.empty() ? 0.0 : log.plant.back().t;
  Series hi{"rate limit", "#2ca02c", {0.0, t_end}, {lim, lim}, true};
  Series lo{"", "#2ca02c", {0.0, t_end}, {-lim, -lim}, true};
  for (std::size_t i = 0; i < log.plant.size(); ++i) {
    const auto & r = log.plant[i];
    roll.x.push_back(r.t);
    roll.y.push_back(r.roll_cmd * 180.0 / std::numbers::pi);
    if (i > 0 && r.t > log.plant[i - 1].t) {
      rate.x.push_back(r.t);
      rate.y.push_back((r.roll_cmd - log.plant[i - 1].roll_cmd) / (r.t - log.plant[i - 1].t) * 180.0 / std::numbers::pi);
    }
  }
  const std::vector<std::string> labels{"roll [deg]", "roll rate [deg/s]"};
  return line_plot("Roll set point", "time [s]", labels, {{roll}, {rate, hi, lo}});
}

/// East, north and heading of a replayed estimate over time.
inline std::string replay_svg(const std::vector<EkfRecord> & ekf)
{
  Series ze{"GNSS", "#999999", {}, {}, false}, e{"EKF estimate", "#1f77b4", {}, {}, false};
  Series zn{"GNSS", "#999999", {}, {}, false}, n{"EKF estimate", "#1f77b4", {}, {}, false};
  Series psi{"EKF heading", "#1f77b4", {}, {}, false};
  for (const auto & r : ekf) {
    ze.x.push_back(r.t);
    ze.y.push_back(r.z.x());
    e.x.push_back(r.t);
    e.y.push_back(r.mean.x);
    zn.x.push_back(r.t);
    zn.y.push_back(r.z.y());
    n.x.push_back(r.t);
    n.y.push_back(r.mean.y);
    psi.x.push_back(r.t);
    psi.y.push_back(r.mean.psi);
  }
  const std::vector<std::string> labels{"east [m]", "north [m]", "heading [rad]"};
  return line_plot("Replayed estimate", "time [s]", labels, {{ze, e}, {zn, n}, {psi}});
}

}  // namespace scootnav::svg

#endif  // SCOOTNAV_SVG_HPP
