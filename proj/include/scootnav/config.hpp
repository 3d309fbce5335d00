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

#ifndef SCOOTNAV_CONFIG_HPP
#define SCOOTNAV_CONFIG_HPP

#include "scootnav/error.hpp"
#include "scootnav/geodesy.hpp"
#include "scootnav/path.hpp"
#include "scootnav/sim.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace scootnav::config
{

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Parsed JSON plus the source line of every value, keyed by JSON pointer.
struct Document
{
  Json root;
  std::map<std::string, std::size_t> lines;
  std::string source;

  std::size_t line_of(std::string pointer) const
  {
    for (;;) {
      const auto it = lines.find(pointer);
      if (it != lines.end()) return it->second;
      const auto cut = pointer.rfind('/');
      if (cut == std::string::npos) return 1;
      pointer.resize(cut);
    }
  }

  std::string where(const std::string & pointer) const
  {
    return source + ":" + std::to_string(line_of(pointer));
  }

  [[noreturn]] void fail(const std::string & pointer, const std::string & message) const
  {
    throw Error(ErrorKind::Config, where(pointer) + ": " + message);
  }
};

namespace detail
{

// Input iterator that counts consumed newlines, so SAX events know their line.
class LineCountingIterator
{
public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char *;
  using reference = const char &;

  LineCountingIterator(const char * p, std::size_t * line, char * last) : p_(p), line_(line), last_(last) {}

  reference operator*() const { return *p_; }
  LineCountingIterator & operator++()
  {
    *last_ = *p_;
    if (*p_ == '\n') ++*line_;
    ++p_;
    return *this;
  }
  LineCountingIterator operator++(int)
  {
    LineCountingIterator old = *this;
    ++*this;
    return old;
  }
  bool operator==(const LineCountingIterator & o) const { return p_ == o.p_; }
  bool operator!=(const LineCountingIterator & o) const { return p_ != o.p_; }

private:
  const char * p_;
  std::size_t * line_;
  char * last_;
};

class LineSax
{
public:
  using number_integer_t = Json::number_integer_t;
  using number_unsigned_t = Json::number_unsigned_t;
  using number_float_t = Json::number_float_t;
  using string_t = Json::string_t;
  using binary_t = Json::binary_t;

  LineSax(Json & root, std::map<std::string, std::size_t> & lines, const std::size_t & line, const char & last)
  : dom_(root, true), lines_(lines), line_(line), last_(last)
  {
  }

  bool null() { return value(false) && dom_.null(); }
  bool boolean(bool v) { return value(false) && dom_.boolean(v); }
  bool number_integer(number_integer_t v) { return value(true) && dom_.number_integer(v); }
  bool number_unsigned(number_unsigned_t v) { return value(true) && dom_.number_unsigned(v); }
  bool number_float(number_float_t v, const string_t & s) { return value(true) && dom_.number_float(v, s); }
  bool string(string_t & v) { return value(false) && dom_.string(v); }
  bool binary(binary_t & v) { return value(false) && dom_.binary(v); }

  bool start_object(std::size_t n)
  {
    value(false);
    stack_.push_back({false, 0, {}});
    return dom_.start_object(n);
  }
  bool key(string_t & k)
  {
    stack_.back().key = k;
    return dom_.key(k);
  }
  bool end_object()
  {
    stack_.pop_back();
    return dom_.end_object();
  }
  bool start_array(std::size_t n)
  {
    value(false);
    stack_.push_back({true, 0, {}});
    return dom_.start_array(n);
  }
  bool end_array()
  {
    stack_.pop_back();
    return dom_.end_array();
  }
  bool parse_error(std::size_t pos, const std::string & token, const nlohmann::detail::exception & ex)
  {
    return dom_.parse_error(pos, token, ex);
  }

private:
  struct Frame
  {
    bool array;
    std::size_t index;
    std::string key;
  };

  // Records the pointer of the value being opened. Numbers are only known
  // after the lexer has read one character past them.
  bool value(bool lookahead)
  {
    std::string ptr;
    for (const Frame & f : stack_) {
      ptr += '/';
      ptr += f.array ? std::to_string(f.index == 0 ? 0 : f.index - 1) : nlohmann::detail::escape(f.key);
    }
    if (!stack_.empty() && stack_.back().array) {
      ptr.resize(ptr.rfind('/') + 1);
      ptr += std::to_string(stack_.back().index++);
    }
    lines_[ptr] = line_ - (lookahead && last_ == '\n' ? 1 : 0);
    return true;
  }

  nlohmann::detail::json_sax_dom_parser<Json> dom_;
  std::map<std::string, std::size_t> & lines_;
  const std::size_t & line_;
  const char & last_;
  std::vector<Frame> stack_;
};

}  // namespace detail

inline Document parse_document(std::string_view text, std::string source)
{
  Document doc;
  doc.source = std::move(source);
  std::size_t line = 1;
  char last = 0;
  detail::LineSax sax(doc.root, doc.lines, line, last);
  const detail::LineCountingIterator begin(text.data(), &line, &last);
  const detail::LineCountingIterator end(text.data() + text.size(), &line, &last);
  try {
    Json::sax_parse(begin, end, &sax);
  } catch (const nlohmann::detail::exception & e) {
    std::string what = e.what();
    const auto cut = what.find("] ");
    if (cut != std::string::npos) what.erase(0, cut + 2);
    throw Error(ErrorKind::Config, doc.source + ":" + std::to_string(line) + ": " + what);
  }
  return doc;
}

inline std::string read_file(const std::filesystem::path & file)
{
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Document load_document(const std::filesystem::path & file)
{
  return parse_document(read_file(file), file.string());
}

/// Typed access to one JSON object; keys never read count as unknown.
class Section
{
public:
  Section(const Document & doc, std::string pointer) : doc_(doc), pointer_(std::move(pointer))
  {
    if (!node().is_object()) doc_.fail(pointer_, "'" + name() + "' must be an object");
  }

  bool has(const std::string & key) const { return node().contains(key); }

  double number(const std::string & key, double fallback)
  {
    if (!take(key)) return fallback;
    const Json & v = node()[key];
    if (!v.is_number()) doc_.fail(child(key), "'" + key + "' must be a number");
    return v.get<double>();
  }

  int integer(const std::string & key, int fallback)
  {
    if (!take(key)) return fallback;
    const Json & v = node()[key];
    if (!v.is_number_integer()) doc_.fail(child(key), "'" + key + "' must be an integer");
    return v.get<int>();
  }

  std::uint64_t unsigned_integer(const std::string & key, std::uint64_t fallback)
  {
    if (!take(key)) return fallback;
    const Json & v = node()[key];
    if (!v.is_number_unsigned()) doc_.fail(child(key), "'" + key + "' must be a nonnegative integer");
    return v.get<std::uint64_t>();
  }

  bool boolean(const std::string & key, bool fallback)
  {
    if (!take(key)) return fallback;
    const Json & v = node()[key];
    if (!v.is_boolean()) doc_.fail(child(key), "'" + key + "' must be true or false");
    return v.get<bool>();
  }

  std::string string(const std::string & key, const std::string & fallback)
  {
    if (!take(key)) return fallback;
    const Json & v = node()[key];
    if (!v.is_string()) doc_.fail(child(key), "'" + key + "' must be a string");
    return v.get<std::string>();
  }

  /// Array of numbers; `size` < 0 accepts any length.
  std::vector<double> numbers(const std::string & key, int size)
  {
    if (!take(key)) doc_.fail(pointer_, "missing '" + key + "'");
    const Json & v = node()[key];
    if (!v.is_array()) doc_.fail(child(key), "'" + key + "' must be an array of numbers");
    if (size >= 0 && v.size() != static_cast<std::size_t>(size)) {
      doc_.fail(child(key), "'" + key + "' must have " + std::to_string(size) + " entries");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) doc_.fail(child(key) + "/" + std::to_string(i), "'" + key + "' must hold numbers");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  /// Marks a key as handled elsewhere.
  void mark(const std::string & key) { seen_.insert(key); }

  Section section(const std::string & key)
  {
    take(key);
    return Section(doc_, child(key));
  }

  /// Rejects keys that were never read.
  void finish() const
  {
    for (const auto & item : node().items()) {
      if (!seen_.count(item.key())) {
        doc_.fail(child(item.key()), "unknown key '" + item.key() + "' in " + name());
      }
    }
  }

  /// Runs `check`, re-raising its error anchored at this section.
  template <class F>
  void validate(F && check) const
  {
    try {
      check();
    } catch (const Error & e) {
      throw Error(e.kind(), doc_.where(pointer_) + ": " + name() + ": " + e.message());
    }
  }

  const std::string & pointer() const { return pointer_; }
  std::string child(const std::string & key) const { return pointer_ + "/" + nlohmann::detail::escape(key); }
  const Document & document() const { return doc_; }

private:
  const Json & node() const { return pointer_.empty() ? doc_.root : doc_.root.at(Json::json_pointer(pointer_)); }
  std::string name() const { return pointer_.empty() ? "top level" : "'" + pointer_.substr(1) + "'"; }

  bool take(const std::string & key)
  {
    seen_.insert(key);
    return node().contains(key);
  }

  const Document & doc_;
  std::string pointer_;
  std::set<std::string> seen_;
};

// ---------------------------------------------------------------------------
// Path files

namespace detail
{

inline std::vector<double> path_widths(Section & top, std::size_t segments)
{
  const Document & doc = top.document();
  if (top.has("half_widths") == top.has("half_width")) {
    doc.fail("", "path needs exactly one of 'half_widths' or 'half_width'");
  }
  if (top.has("half_width")) return std::vector<double>(segments, top.number("half_width", 0.0));
  return top.numbers("half_widths", -1);
}

inline Point2 planar_point(const Document & doc, const std::string & ptr)
{
  const Json & v = doc.root.at(Json::json_pointer(ptr));
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    doc.fail(ptr, "waypoint must be [east, north]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

inline geodesy::GeodeticPoint geodetic_point(const Document & doc, const std::string & ptr, bool with_alt)
{
  Section sec(doc, ptr);
  geodesy::GeodeticPoint g;
  if (!sec.has("lat") || !sec.has("lon")) doc.fail(ptr, "point needs 'lat' and 'lon'");
  g.lat = sec.number("lat", 0.0);
  g.lon = sec.number("lon", 0.0);
  if (with_alt) g.alt = sec.number("alt", 0.0);
  sec.finish();
  if (!g.valid()) doc.fail(ptr, "latitude or longitude out of range");
  return g;
}

}  // namespace detail

/// {"origin": {lat, lon, alt}, "waypoints": [{lat, lon}, ...], "half_widths": [...]}
/// with the origin defaulting to the first waypoint, or the planar form
/// {"waypoints_enu": [[e, n], ...], "half_widths": [...]}. "half_width" gives
/// one width for all segments.
inline Path parse_path(const Document & doc)
{
  Section top(doc, "");
  std::vector<Point2> points;
  std::string list;
  if (top.has("waypoints_enu")) {
    if (top.has("waypoints") || top.has("origin")) {
      doc.fail("", "'waypoints_enu' cannot be combined with geodetic waypoints");
    }
    list = "/waypoints_enu";
    top.mark("waypoints_enu");
    if (!doc.root.at("waypoints_enu").is_array()) doc.fail(list, "'waypoints_enu' must be an array");
    const std::size_t n = doc.root.at("waypoints_enu").size();
    for (std::size_t i = 0; i < n; ++i) points.push_back(detail::planar_point(doc, list + "/" + std::to_string(i)));
  } else if (top.has("waypoints")) {
    list = "/waypoints";
    top.mark("waypoints");
    const Json & wp = doc.root.at("waypoints");
    if (!wp.is_array()) doc.fail(list, "'waypoints' must be an array");
    if (wp.empty()) doc.fail(list, "path has no waypoints");
    const geodesy::GeodeticPoint origin =
      top.has("origin") ? detail::geodetic_point(doc, "/origin", true) : detail::geodetic_point(doc, list + "/0", false);
    top.mark("origin");
    const geodesy::EnuFrame frame(origin);
    for (std::size_t i = 0; i < wp.size(); ++i) {
      geodesy::GeodeticPoint g = detail::geodetic_point(doc, list + "/" + std::to_string(i), false);
      g.alt = origin.alt;
      const geodesy::EnuPoint e = frame.to_enu(g);
      points.emplace_back(e.east, e.north);
    }
  } else {
    doc.fail("", "path needs 'waypoints' or 'waypoints_enu'");
  }
  const std::vector<double> widths = detail::path_widths(top, points.empty() ? 0 : points.size() - 1);
  top.finish();
  try {
    return build_path(std::move(points), widths);
  } catch (const Error & e) {
    throw Error(e.kind(), doc.where(list) + ": " + e.message());
  }
}

inline Path load_path(const std::filesystem::path & file) { return parse_path(load_document(file)); }

// ---------------------------------------------------------------------------
// Run configuration

/// Scenario plus the file-level settings of one run.
struct RunConfig
{
  ScenarioConfig scenario;
  std::filesystem::path path_file;
  std::filesystem::path output_dir = "out";
};

namespace detail
{

inline Vec6 vec6(Section & sec, const std::string & key, const Vec6 & fallback)
{
  if (!sec.has(key)) return fallback;
  const std::vector<double> v = sec.numbers(key, 6);
  return Eigen::Map<const Vec6>(v.data());
}

inline Eigen::Vector2d vec2(Section & sec, const std::string & key, const Eigen::Vector2d & fallback)
{
  if (!sec.has(key)) return fallback;
  const std::vector<double> v = sec.numbers(key, 2);
  return {v[0], v[1]};
}

}  // namespace detail

/// Parses a run configuration. `base` resolves a relative path_file; the path
/// itself is loaded by the caller (see load_run_config).
inline RunConfig parse_run_config(const Document & doc, const std::filesystem::path & base)
{
  RunConfig rc;
  ScenarioConfig & sc = rc.scenario;
  Section top(doc, "");

  if (!top.has("schema_version")) doc.fail("", "missing 'schema_version'");
  const int version = top.integer("schema_version", 0);
  if (version != kSchemaVersion) {
    doc.fail("/schema_version", "unsupported schema_version " + std::to_string(version) + " (expected " +
                                  std::to_string(kSchemaVersion) + ")");
  }
  if (!top.has("path_file")) doc.fail("", "missing 'path_file'");
  rc.path_file = top.string("path_file", "");
  if (rc.path_file.is_relative()) rc.path_file = base / rc.path_file;
  rc.output_dir = top.string("output_dir", rc.output_dir.string());
  sc.sensors.seed = top.unsigned_integer("seed", sc.sensors.seed);
  sc.time_limit = top.number("time_limit", sc.time_limit);
  sc.plant_rate = top.number("plant_rate", sc.plant_rate);
  sc.heading_prior_sigma = top.number("heading_prior_sigma", sc.heading_prior_sigma);
  sc.anchor_on_commands = top.boolean("anchor_on_commands", sc.anchor_on_commands);

  if (top.has("vehicle")) {
    Section s = top.section("vehicle");
    sc.vehicle.wheelbase = s.number("wheelbase", sc.vehicle.wheelbase);
    sc.vehicle.rear_to_sensor = s.number("rear_to_sensor", sc.vehicle.rear_to_sensor);
    sc.vehicle.gravity = s.number("gravity", sc.vehicle.gravity);
    s.finish();
    s.validate([&] { sc.vehicle.validate(); });
  }
  if (top.has("horizon")) {
    Section s = top.section("horizon");
    sc.horizon.v_max = s.number("v_max", sc.horizon.v_max);
    sc.horizon.f_mpc = s.number("f_mpc", sc.horizon.f_mpc);
    sc.horizon.horizon_length_m = s.number("horizon_length_m", sc.horizon.horizon_length_m);
    sc.horizon.lookahead_factor = s.number("lookahead_factor", sc.horizon.lookahead_factor);
    s.finish();
    s.validate([&] { sc.horizon.validate(); });
  }
  if (top.has("weights")) {
    Section s = top.section("weights");
    sc.weights.q = detail::vec6(s, "q", sc.weights.q);
    sc.weights.r = detail::vec2(s, "r", sc.weights.r);
    sc.weights.p = detail::vec6(s, "p", s.has("q") ? sc.weights.q : sc.weights.p);
    s.finish();
    s.validate([&] { sc.weights.validate(); });
  }
  // v_max lives in the horizon section; limits inherit it.
  sc.limits.v_max = sc.horizon.v_max;
  if (top.has("limits")) {
    Section s = top.section("limits");
    OcpLimits & l = sc.limits;
    if (s.has("v_max")) {
      l.v_max = s.number("v_max", l.v_max);
      if (!top.has("horizon") || !doc.root.at("horizon").contains("v_max")) sc.horizon.v_max = l.v_max;
    }
    l.delta_max = s.number("delta_max", l.delta_max);
    l.steer_rate_max = s.number("steer_rate_max", l.steer_rate_max);
    l.a_min = s.number("a_min", l.a_min);
    l.a_max = s.number("a_max", l.a_max);
    l.roll_rate_max = s.number("roll_rate_max", l.roll_rate_max);
    l.v_curve = s.number("v_curve", l.v_curve);
    l.velocity_lag = s.number("velocity_lag", l.velocity_lag);
    s.finish();
    s.validate([&] { l.validate(); });
  }
  if (top.has("sensors")) {
    Section s = top.section("sensors");
    SensorConfig & c = sc.sensors;
    c.gnss_rate = s.number("gnss_rate", c.gnss_rate);
    c.gnss_sigma = s.number("gnss_sigma", c.gnss_sigma);
    c.gnss_reports_r = s.boolean("gnss_reports_r", c.gnss_reports_r);
    c.nominal_sigma = s.number("nominal_sigma", c.nominal_sigma);
    c.encoder_rate = s.number("encoder_rate", c.encoder_rate);
    c.encoder_v_sigma = s.number("encoder_v_sigma", c.encoder_v_sigma);
    c.encoder_delta_sigma = s.number("encoder_delta_sigma", c.encoder_delta_sigma);
    s.finish();
    s.validate([&] { c.validate(); });
  }
  if (top.has("actuators")) {
    Section s = top.section("actuators");
    ActuatorConfig & a = sc.actuators;
    a.velocity_tau = s.number("velocity_tau", a.velocity_tau);
    a.steer_rate = s.number("steer_rate", a.steer_rate);
    a.delay = s.number("delay", a.delay);
    s.finish();
    s.validate([&] { a.validate(); });
  }
  if (top.has("process_noise")) {
    Section s = top.section("process_noise");
    const std::vector<double> q = s.numbers("q", 3);
    s.finish();
    if (!(q[0] >= 0.0 && q[1] >= 0.0 && q[2] >= 0.0)) doc.fail("/process_noise/q", "process noise must be nonnegative");
    sc.process_noise.q = Eigen::Vector3d(q[0], q[1], q[2]).asDiagonal();
  }
  if (top.has("disturbance")) {
    Section s = top.section("disturbance");
    sc.disturbance.velocity_bias = s.number("velocity_bias", sc.disturbance.velocity_bias);
    sc.disturbance.lateral_sigma = s.number("lateral_sigma", sc.disturbance.lateral_sigma);
    s.finish();
    if (!(sc.disturbance.lateral_sigma >= 0.0)) {
      doc.fail("/disturbance/lateral_sigma", "lateral_sigma must be nonnegative");
    }
  }
  if (top.has("sqp")) {
    Section s = top.section("sqp");
    SqpOptions & o = sc.sqp;
    o.max_iter = s.integer("max_iter", o.max_iter);
    o.kkt_tol = s.number("kkt_tol", o.kkt_tol);
    o.slack_penalty = s.number("slack_penalty", o.slack_penalty);
    s.finish();
    if (!(o.max_iter >= 1 && o.kkt_tol > 0.0 && o.slack_penalty > 0.0)) {
      doc.fail("/sqp", "sqp needs max_iter >= 1 and positive kkt_tol and slack_penalty");
    }
  }
  top.finish();
  top.validate([&] {
    if (sc.horizon.v_max != sc.limits.v_max) {
      throw Error(ErrorKind::InvalidParams, "horizon.v_max and limits.v_max disagree");
    }
    if (!(sc.time_limit > 0.0 && sc.plant_rate > 0.0 && sc.heading_prior_sigma > 0.0)) {
      throw Error(ErrorKind::InvalidParams, "time_limit, plant_rate and heading_prior_sigma must be positive");
    }
    for (const double rate : {sc.sensors.gnss_rate, sc.sensors.encoder_rate, sc.horizon.f_mpc}) sc.ticks(rate);
  });
  return rc;
}

/// Reads the config, then the path file it names.
inline RunConfig load_run_config(const std::filesystem::path & file)
{
  const Document doc = load_document(file);
  RunConfig rc = parse_run_config(doc, file.parent_path());
  try {
    rc.scenario.path = load_path(rc.path_file);
  } catch (const Error & e) {
    if (e.kind() != ErrorKind::Io) throw;
    throw Error(ErrorKind::Io, doc.where("/path_file") + ": " + e.message());
  }
  return rc;
}

}  // namespace scootnav::config

#endif  // SCOOTNAV_CONFIG_HPP
