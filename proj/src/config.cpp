// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinor_efimov/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace spinor_efimov {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

const std::set<std::string, std::less<>> kKnownKeys = {
    "task",      "mode",        "theta",     "a_alpha",   "a_beta",  "a_gamma", "matrix",
    "toy",       "R",           "theta_min", "theta_max", "theta_count", "r_min", "r_max",
    "r_count",   "kappa_max",   "s_max",     "real_roots", "kappa",  "r0",      "levels",
    "samples",   "seed",        "out_dir",   "formats"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Entry {
  std::string value;
  int line;
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) > 0; }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    auto it = entries_.find(key);
    const std::string where =
        it != entries_.end() ? "line " + std::to_string(it->second.line) + ": " : "";
    throw ConfigError(where + "key '" + key + "': " + msg);
  }

  const std::string& raw(const std::string& key) const { return entries_.at(key).value; }

  double number(const std::string& key, std::string_view text) const {
    const std::string s = trim(text);
    // accepted forms: <num>, pi, pi/<num>, <num>*pi, <num>*pi/<num>
    const auto pi_at = s.find("pi");
    if (pi_at != std::string::npos) {
      double factor = 1.0, divisor = 1.0;
      const std::string head = trim(std::string_view(s).substr(0, pi_at));
      const std::string tail = trim(std::string_view(s).substr(pi_at + 2));
      if (!head.empty()) {
        if (head.back() != '*') fail(key, "cannot parse number '" + s + "'");
        factor = plain(key, head.substr(0, head.size() - 1));
      }
      if (!tail.empty()) {
        if (tail.front() != '/') fail(key, "cannot parse number '" + s + "'");
        divisor = plain(key, tail.substr(1));
      }
      return factor * std::numbers::pi / divisor;
    }
    return plain(key, s);
  }

  double number(const std::string& key) const { return number(key, raw(key)); }

  double plain(const std::string& key, std::string_view text) const {
    const std::string s = trim(text);
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(v))
      fail(key, "cannot parse number '" + s + "'");
    return v;
  }

  long long integer(const std::string& key) const {
    const std::string s = trim(raw(key));
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
      fail(key, "expected an integer, got '" + s + "'");
    return v;
  }

  std::uint64_t unsigned_integer(const std::string& key) const {
    const std::string s = trim(raw(key));
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
      fail(key, "expected a non-negative integer, got '" + s + "'");
    return v;
  }

  bool boolean(const std::string& key) const {
    const std::string s = trim(raw(key));
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    fail(key, "expected true or false, got '" + s + "'");
  }

  ScatteringLength length(const std::string& key) const {
    const std::string s = trim(raw(key));
    if (s == "unitary" || s == "inf") return ScatteringLength::unitary();
    if (s == "closed") return ScatteringLength::closed();
    return ScatteringLength::finite(plain(key, s));
  }

  std::vector<double> numbers(const std::string& key, std::size_t count) const {
    const auto items = split_list(raw(key));
    if (items.size() != count)
      fail(key, "expected " + std::to_string(count) + " comma-separated values, got " +
                    std::to_string(items.size()));
    std::vector<double> out;
    for (const auto& it : items) out.push_back(number(key, it));
    return out;
  }

 private:
  std::map<std::string, Entry> entries_;
};

std::string full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string length_text(const ScatteringLength& a) {
  if (a.is_unitary()) return "unitary";
  if (a.is_closed()) return "closed";
  return full(a.value());
}

}  // namespace

std::string to_string(Task t) {
  switch (t) {
    case Task::roots: return "roots";
    case Task::theta_sweep: return "theta-sweep";
    case Task::r_sweep: return "r-sweep";
    case Task::ladder: return "ladder";
    case Task::invariance_suite: return "invariance-suite";
  }
  return "?";
}

std::string to_string(Format f) {
  switch (f) {
    case Format::csv: return "csv";
    case Format::json: return "json";
    case Format::svg: return "svg";
  }
  return "?";
}

std::optional<Task> parse_task(std::string_view s) {
  for (Task t : {Task::roots, Task::theta_sweep, Task::r_sweep, Task::ladder,
                 Task::invariance_suite})
    if (to_string(t) == s) return t;
  return std::nullopt;
}

ParsedConfig parse_config(std::string_view text, bool strict, std::optional<Task> task_override) {
  ParsedConfig result;
  std::map<std::string, Entry> entries;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (!kKnownKeys.count(key)) {
      const std::string msg = "line " + std::to_string(line_no) + ": unknown key '" + key + "'";
      if (strict) throw ConfigError(msg);
      result.warnings.push_back(msg);
      continue;
    }
    if (entries.count(key))
      throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    entries[key] = {value, line_no};
  }

  const Reader in(std::move(entries));
  RunConfig& cfg = result.config;

  std::optional<Task> task = task_override;
  if (in.has("task")) {
    const auto t = parse_task(in.raw("task"));
    if (!t) in.fail("task", "unknown task '" + in.raw("task") + "'");
    if (task && *task != *t)
      in.fail("task", "file says '" + in.raw("task") + "' but '" + to_string(*task) +
                          "' was requested");
    task = t;
  }
  if (!task) throw ConfigError("missing required key 'task'");
  cfg.task = *task;

  if (in.has("mode")) {
    const std::string m = in.raw("mode");
    if (m == "asymptotic")
      cfg.mode = Mode::asymptotic;
    else if (m == "finite")
      cfg.mode = Mode::finite;
    else
      in.fail("mode", "expected 'asymptotic' or 'finite', got '" + m + "'");
  } else if (cfg.task == Task::r_sweep) {
    cfg.mode = Mode::finite;
  }

  // matrix input forms
  const bool has_angle = in.has("theta") || in.has("a_alpha") || in.has("a_beta") ||
                         in.has("a_gamma");
  const int forms = int(has_angle) + int(in.has("matrix")) + int(in.has("toy"));
  if (forms > 1)
    throw ConfigError("matrix input: 'matrix', 'toy' and the angle form (theta, a_alpha, "
                      "a_beta, a_gamma) are mutually exclusive");
  if (in.has("matrix")) {
    const auto v = in.numbers("matrix", 6);
    RawMatrixInput raw;
    std::copy(v.begin(), v.end(), raw.entries.begin());
    cfg.input = raw;
  } else if (in.has("toy")) {
    const auto v = in.numbers("toy", 4);
    cfg.input = ToyInput{v[0], v[1], v[2], v[3]};
  } else if (has_angle || cfg.task == Task::theta_sweep) {
    AngleInput angle;
    if (cfg.mode == Mode::finite)
      angle.lengths = {ScatteringLength::finite(1.0), ScatteringLength::finite(1e6),
                       ScatteringLength::closed()};
    if (in.has("theta")) angle.theta = in.number("theta");
    const char* names[] = {"a_alpha", "a_beta", "a_gamma"};
    for (int i = 0; i < 3; ++i)
      if (in.has(names[i])) angle.lengths[i] = in.length(names[i]);
    cfg.input = angle;
  }

  if (in.has("R")) cfg.R = in.number("R");
  if (in.has("theta_min")) cfg.theta_min = in.number("theta_min");
  if (in.has("theta_max")) cfg.theta_max = in.number("theta_max");
  if (in.has("theta_count")) cfg.theta_count = static_cast<int>(in.integer("theta_count"));
  if (in.has("r_min")) cfg.r_min = in.number("r_min");
  if (in.has("r_max")) cfg.r_max = in.number("r_max");
  if (in.has("r_count")) cfg.r_count = static_cast<int>(in.integer("r_count"));
  if (in.has("kappa_max")) cfg.kappa_max = in.number("kappa_max");
  if (in.has("s_max")) cfg.s_max = in.number("s_max");
  if (in.has("real_roots")) cfg.real_roots = in.boolean("real_roots");
  if (in.has("kappa")) cfg.kappa = in.number("kappa");
  if (in.has("r0")) cfg.r0 = in.number("r0");
  if (in.has("levels")) cfg.levels = static_cast<int>(in.integer("levels"));
  if (in.has("samples")) cfg.samples = static_cast<int>(in.integer("samples"));
  if (in.has("seed")) cfg.seed = in.unsigned_integer("seed");
  if (in.has("out_dir")) cfg.out_dir = in.raw("out_dir");
  if (in.has("formats")) {
    cfg.formats.clear();
    for (const auto& f : split_list(in.raw("formats"))) {
      if (f == "csv")
        cfg.formats.push_back(Format::csv);
      else if (f == "json")
        cfg.formats.push_back(Format::json);
      else if (f == "svg")
        cfg.formats.push_back(Format::svg);
      else
        in.fail("formats", "unknown format '" + f + "' (expected csv, json, svg)");
    }
  }

  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    // attach the line of the offending key when the message names one
    const std::string msg = e.what();
    const auto q = msg.find("key '");
    if (q != std::string::npos) {
      const auto end = msg.find('\'', q + 5);
      const std::string key = msg.substr(q + 5, end - q - 5);
      if (in.has(key)) in.fail(key, msg.substr(end + 3));
    }
    throw;
  }
  return result;
}

void validate(const RunConfig& cfg) {
  auto fail = [](const std::string& key, const std::string& msg) {
    throw ConfigError("key '" + key + "': " + msg);
  };
  const bool raw = std::holds_alternative<RawMatrixInput>(cfg.input);
  const bool toy = std::holds_alternative<ToyInput>(cfg.input);
  const auto* angle = std::get_if<AngleInput>(&cfg.input);
  const bool none = std::holds_alternative<std::monostate>(cfg.input);

  if (angle && angle->theta && !(*angle->theta >= 0.0 && *angle->theta <= kHalfPi))
    fail("theta", "out of range [0, pi/2]");

  switch (cfg.task) {
    case Task::roots:
    case Task::r_sweep:
      if (none)
        throw ConfigError("matrix input: exactly one of 'matrix', 'toy' or the angle form "
                          "is required");
      if (angle && !angle->theta) fail("theta", "required for task " + to_string(cfg.task));
      break;
    case Task::theta_sweep:
      if (!angle) fail(raw ? "matrix" : "toy", "theta-sweep uses the angle form only");
      if (angle->theta) fail("theta", "theta-sweep takes theta_min/theta_max/theta_count");
      break;
    case Task::ladder:
      if (cfg.kappa && !none) fail("kappa", "give either 'kappa' or a matrix input, not both");
      if (!cfg.kappa && none)
        throw ConfigError("ladder: 'kappa' or a matrix input is required");
      if (angle && !angle->theta) fail("theta", "required for task ladder");
      break;
    case Task::invariance_suite:
      if (!none) fail(raw ? "matrix" : toy ? "toy" : "theta", "not used by invariance-suite");
      break;
  }
  if (cfg.task == Task::r_sweep && cfg.mode != Mode::finite)
    fail("mode", "r-sweep requires finite mode");
  if (cfg.task == Task::invariance_suite && cfg.mode != Mode::finite)
    fail("mode", "invariance-suite runs in finite mode");
  if (cfg.task == Task::ladder && !cfg.kappa && cfg.mode != Mode::asymptotic)
    fail("mode", "ladder derives kappa from asymptotic-mode roots");

  if (angle) {
    const char* names[] = {"a_alpha", "a_beta", "a_gamma"};
    for (int i = 0; i < 3; ++i) {
      const ScatteringLength& a = angle->lengths[i];
      if (cfg.mode == Mode::finite && a.is_unitary())
        fail(names[i], "finite mode does not accept a unitary flag");
      if (cfg.mode == Mode::asymptotic && a.is_finite())
        fail(names[i], "asymptotic mode needs 'unitary' or 'closed'");
    }
  }
  if (cfg.mode == Mode::asymptotic && (raw || toy))
    fail(raw ? "matrix" : "toy", "asymptotic mode requires the angle form with unitary/closed flags");

  if (!(cfg.R > 0.0)) fail("R", "must be positive");
  if (!(cfg.theta_min >= 0.0 && cfg.theta_min <= kHalfPi)) fail("theta_min", "out of range [0, pi/2]");
  if (!(cfg.theta_max >= 0.0 && cfg.theta_max <= kHalfPi)) fail("theta_max", "out of range [0, pi/2]");
  if (cfg.theta_max < cfg.theta_min) fail("theta_max", "must not be below theta_min");
  if (cfg.theta_count < 1) fail("theta_count", "must be at least 1");
  if (!(cfg.r_min > 0.0)) fail("r_min", "must be positive");
  if (!(cfg.r_max >= cfg.r_min)) fail("r_max", "must not be below r_min");
  if (cfg.r_count < 1) fail("r_count", "must be at least 1");
  if (cfg.kappa_max && !(*cfg.kappa_max > 0.0)) fail("kappa_max", "must be positive");
  if (!(cfg.s_max >= 2.0)) fail("s_max", "must be at least 2");
  if (cfg.kappa && !(*cfg.kappa > 0.0)) fail("kappa", "must be positive");
  if (!(cfg.r0 > 0.0)) fail("r0", "must be positive");
  if (cfg.levels < 1) fail("levels", "must be at least 1");
  if (cfg.samples < 1) fail("samples", "must be at least 1");
  if (cfg.formats.empty()) fail("formats", "at least one format is required");
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "task = " << to_string(cfg.task) << "\n";
  os << "mode = " << to_string(cfg.mode) << "\n";
  if (const auto* raw = std::get_if<RawMatrixInput>(&cfg.input)) {
    os << "matrix = ";
    for (std::size_t k = 0; k < 6; ++k) os << (k ? ", " : "") << full(raw->entries[k]);
    os << "\n";
  } else if (const auto* toy = std::get_if<ToyInput>(&cfg.input)) {
    os << "toy = " << full(toy->a11) << ", " << full(toy->a22) << ", " << full(toy->a12) << ", "
       << full(toy->a33) << "\n";
  } else if (const auto* angle = std::get_if<AngleInput>(&cfg.input)) {
    if (angle->theta) os << "theta = " << full(*angle->theta) << "\n";
    os << "a_alpha = " << length_text(angle->lengths[0]) << "\n";
    os << "a_beta = " << length_text(angle->lengths[1]) << "\n";
    os << "a_gamma = " << length_text(angle->lengths[2]) << "\n";
  }
  os << "R = " << full(cfg.R) << "\n";
  os << "theta_min = " << full(cfg.theta_min) << "\n";
  os << "theta_max = " << full(cfg.theta_max) << "\n";
  os << "theta_count = " << cfg.theta_count << "\n";
  os << "r_min = " << full(cfg.r_min) << "\n";
  os << "r_max = " << full(cfg.r_max) << "\n";
  os << "r_count = " << cfg.r_count << "\n";
  if (cfg.kappa_max) os << "kappa_max = " << full(*cfg.kappa_max) << "\n";
  os << "s_max = " << full(cfg.s_max) << "\n";
  os << "real_roots = " << (cfg.real_roots ? "true" : "false") << "\n";
  if (cfg.kappa) os << "kappa = " << full(*cfg.kappa) << "\n";
  os << "r0 = " << full(cfg.r0) << "\n";
  os << "levels = " << cfg.levels << "\n";
  os << "samples = " << cfg.samples << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "out_dir = " << cfg.out_dir << "\n";
  os << "formats = ";
  for (std::size_t k = 0; k < cfg.formats.size(); ++k)
    os << (k ? "," : "") << to_string(cfg.formats[k]);
  os << "\n";
  return os.str();
}

TwoBodyChannelSet channel_set(const RunConfig& cfg) {
  if (const auto* raw = std::get_if<RawMatrixInput>(&cfg.input)) {
    const auto& e = raw->entries;
    return eigenchannels(ScatteringMatrix(e[0], e[1], e[2], e[3], e[4], e[5]));
  }
  if (const auto* toy = std::get_if<ToyInput>(&cfg.input))
    return toy_closed_form(toy->a11, toy->a22, toy->a12, toy->a33);
  if (const auto* angle = std::get_if<AngleInput>(&cfg.input)) {
    if (!angle->theta) throw ConfigError("key 'theta': required");
    return channels_from_angle(*angle->theta, angle->lengths[0], angle->lengths[1],
                               angle->lengths[2]);
  }
  throw ConfigError("matrix input: none given");
}

}  // namespace spinor_efimov
