// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinor_efimov/run.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace spinor_efimov {

namespace {

using ordered_json = nlohmann::ordered_json;

Cell number_or_null(std::optional<double> x) {
  if (!x || std::isnan(*x)) return std::monostate{};
  return *x;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void append_root_rows(Table& t, const SweepRow& row) {
  for (const ChannelRoot& r : row.roots) {
    const SpinProfile p = r.spin_profile.value_or(SpinProfile{});
    t.rows.push_back({number_or_null(row.theta), number_or_null(row.R), to_string(row.mode),
                      to_string(r.axis), r.value, static_cast<long long>(r.multiplicity),
                      p.w_111, p.w_mixed});
  }
}

Table sweep_table(const std::string& name, const SweepTable& sweep) {
  Table t{name, sweep_columns(), {}};
  for (const SweepRow& row : sweep.rows) append_root_rows(t, row);
  return t;
}

void collect_warnings(ResultBundle& b, const SweepTable& sweep) {
  for (const SweepRow& row : sweep.rows)
    for (const std::string& w : row.warnings) b.warnings.push_back(w);
}

RootList all_roots(const ChannelMatrixSpec& spec, double s_max, bool real,
                   std::optional<double> kappa_max) {
  RootList out = find_roots_imaginary(spec, kappa_max);
  if (real) {
    RootList r = find_roots_real(spec, s_max);
    out.roots.insert(out.roots.end(), r.roots.begin(), r.roots.end());
    out.warnings.insert(out.warnings.end(), r.warnings.begin(), r.warnings.end());
  }
  sort_roots(out.roots);
  return out;
}

Table channel_table(const TwoBodyChannelSet& c) {
  Table t{"channels", {"channel", "a", "v_11", "v_12S", "v_22"}, {}};
  for (int i = 0; i < 3; ++i)
    t.rows.push_back({to_string(static_cast<Channel>(i)), to_string(c.lengths[i]),
                      c.vectors(0, i), c.vectors(1, i), c.vectors(2, i)});
  return t;
}

void run_roots(const RunConfig& cfg, ResultBundle& b) {
  const TwoBodyChannelSet channels = channel_set(cfg);
  const ChannelMatrixSpec spec = cfg.mode == Mode::asymptotic
                                     ? ChannelMatrixSpec::asymptotic(channels)
                                     : ChannelMatrixSpec::finite(channels, cfg.R);
  RootList roots = all_roots(spec, cfg.s_max, cfg.real_roots, cfg.kappa_max);
  const ThreeBodySpinBasis basis = three_body_basis(channels);
  SweepRow row;
  row.theta = channels.mixing_angle.value_or(std::numeric_limits<double>::quiet_NaN());
  row.mode = cfg.mode;
  if (cfg.mode == Mode::finite) row.R = cfg.R;
  for (auto& r : roots.roots) r.spin_profile = classify_root(r, basis);
  row.roots = std::move(roots.roots);
  Table t{"roots", sweep_columns(), {}};
  append_root_rows(t, row);
  b.tables.push_back(std::move(t));
  b.tables.push_back(channel_table(channels));
  b.warnings.insert(b.warnings.end(), roots.warnings.begin(), roots.warnings.end());
}

void run_theta_sweep(const RunConfig& cfg, ResultBundle& b) {
  const auto& angle = std::get<AngleInput>(cfg.input);
  SweepOptions opts;
  opts.include_real = cfg.real_roots;
  opts.s_max = cfg.s_max;
  opts.kappa_max = cfg.kappa_max;
  SweepTable sweep = theta_sweep(linear_grid(cfg.theta_min, cfg.theta_max, cfg.theta_count),
                                 angle.lengths, cfg.mode, cfg.R, opts);
  b.tables.push_back(sweep_table("theta-sweep", sweep));
  Table summary{"summary", {"metric", "value"}, {}};
  summary.rows.push_back({std::string("max_curve_jump"), max_curve_jump(sweep)});
  summary.rows.push_back({std::string("rows"), static_cast<long long>(sweep.rows.size())});
  b.tables.push_back(std::move(summary));
  collect_warnings(b, sweep);
  b.sweep = std::move(sweep);
  b.figure_axis = FigureAxis::theta;
}

void run_r_sweep(const RunConfig& cfg, ResultBundle& b) {
  const TwoBodyChannelSet channels = channel_set(cfg);
  SweepOptions opts;
  opts.include_real = cfg.real_roots;
  opts.s_max = cfg.s_max;
  opts.kappa_max = cfg.kappa_max;
  const std::vector<double> radii = log_grid(cfg.r_min, cfg.r_max, cfg.r_count);
  SweepTable sweep = r_sweep(channels, radii, opts);
  b.tables.push_back(sweep_table("r-sweep", sweep));

  Table plateaus{"plateaus", {"curve", "value", "R", "flatness", "accepted"}, {}};
  const ScatteringLength& aa = channels.lengths[0];
  const ScatteringLength& ab = channels.lengths[1];
  if (aa.is_finite() && ab.is_finite()) {
    const PlateauResult pr = plateau_extract(sweep, aa.value(), ab.value());
    for (const Plateau& p : pr.candidates)
      plateaus.rows.push_back({static_cast<long long>(p.curve), p.value, p.R, p.flatness,
                               std::string(p.accepted ? "true" : "false")});
    if (!pr.found) b.warnings.push_back(pr.reason);
  } else {
    b.warnings.push_back("no plateau: a_alpha and a_beta must both be finite");
  }
  b.tables.push_back(std::move(plateaus));

  Table pot{"potential", {"curve", "axis", "R", "value", "s_squared", "U"}, {}};
  const PhysicalConvention conv;
  for (const RootCurve& c : root_curves(sweep)) {
    for (std::size_t k = 0; k < radii.size(); ++k) {
      if (!c.samples[k]) continue;
      RootCurve one{c.label, {c.samples[k]}};
      const AdiabaticPotential u = potential({one}, {radii[k]}, conv);
      pot.rows.push_back({c.label, to_string(c.samples[k]->axis), radii[k], c.samples[k]->value,
                          u.s_squared[0][0], u.U[0][0]});
    }
  }
  b.tables.push_back(std::move(pot));
  collect_warnings(b, sweep);
  b.sweep = std::move(sweep);
  b.figure_axis = FigureAxis::log_radius;
}

void run_ladder(const RunConfig& cfg, ResultBundle& b) {
  double kappa = 0.0;
  if (cfg.kappa) {
    kappa = *cfg.kappa;
  } else {
    const RootList roots = find_roots_imaginary(ChannelMatrixSpec::asymptotic(channel_set(cfg)),
                                                cfg.kappa_max);
    if (roots.roots.empty())
      throw std::runtime_error("no imaginary root: the configuration has no Efimov channel");
    kappa = roots.roots.front().value;
  }
  const AdiabaticPotential u = unitary_potential(kappa, log_grid(cfg.r0, 10.0 * cfg.r0, 4001));
  const LadderSpectrum ladder = bound_states(u, cfg.r0, cfg.levels);
  const double expected = std::exp(2.0 * std::numbers::pi / kappa);

  Table t{"ladder", {"n", "energy", "nodes", "ratio_to_next", "expected_ratio", "relative_deviation"}, {}};
  for (std::size_t n = 0; n < ladder.energies.size(); ++n) {
    Cell ratio, dev;
    if (n < ladder.ratios.size()) {
      ratio = ladder.ratios[n];
      dev = std::abs(ladder.ratios[n] - expected) / expected;
    }
    t.rows.push_back({static_cast<long long>(n), ladder.energies[n],
                      static_cast<long long>(ladder.nodes[n]), ratio, expected, dev});
  }
  b.tables.push_back(std::move(t));
  Table s{"summary", {"metric", "value"}, {}};
  s.rows.push_back({std::string("kappa"), kappa});
  s.rows.push_back({std::string("scaling_factor"), scaling_factor(kappa)});
  s.rows.push_back({std::string("expected_ratio"), expected});
  s.rows.push_back({std::string("r0"), ladder.r0});
  s.rows.push_back({std::string("R_max"), ladder.R_max});
  s.rows.push_back({std::string("depth_exhausted"), std::string(ladder.depth_exhausted ? "true" : "false")});
  b.tables.push_back(std::move(s));
  b.warnings.insert(b.warnings.end(), ladder.warnings.begin(), ladder.warnings.end());
  for (std::size_t n = 0; n < ladder.nodes.size(); ++n)
    if (ladder.nodes[n] != static_cast<int>(n))
      b.errors.push_back("ladder: level " + std::to_string(n) + " has " +
                         std::to_string(ladder.nodes[n]) + " nodes");
}

void run_invariance(const RunConfig& cfg, ResultBundle& b) {
  InvarianceReport rep = invariance_suite(cfg.samples, cfg.seed, cfg.R, cfg.s_max);
  b.tables.push_back(std::move(rep.table));
  Table s{"summary", {"metric", "value"}, {}};
  s.rows.push_back({std::string("max_rotation_deviation"), rep.max_rotation_deviation});
  s.rows.push_back({std::string("max_sign_flip_deviation"), rep.max_sign_flip_deviation});
  s.rows.push_back({std::string("mismatched_lists"), static_cast<long long>(rep.mismatched_lists)});
  b.tables.push_back(std::move(s));
  const double worst = std::max(rep.max_rotation_deviation, rep.max_sign_flip_deviation);
  if (rep.mismatched_lists > 0 || !(worst < 1e-8))
    b.errors.push_back("invariance-suite: root lists differ (max deviation " +
                       format_number(worst) + ")");
}

std::string csv_field(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "";
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

ordered_json json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return std::strtod(format_number(*d).c_str(), nullptr);
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  return nullptr;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + p.string() + "'");
}

}  // namespace

const Table* ResultBundle::table(const std::string& name) const {
  for (const Table& t : tables)
    if (t.name == name) return &t;
  return nullptr;
}

std::vector<std::string> sweep_columns() {
  return {"theta", "R", "mode", "axis", "value", "multiplicity", "w_111_family", "w_mixed_family"};
}

ResultBundle run(const RunConfig& cfg) {
  validate(cfg);
  ResultBundle b;
  b.task = cfg.task;
  b.config_text = serialize_config(cfg);
  b.timestamp = utc_timestamp();
  try {
    switch (cfg.task) {
      case Task::roots: run_roots(cfg, b); break;
      case Task::theta_sweep: run_theta_sweep(cfg, b); break;
      case Task::r_sweep: run_r_sweep(cfg, b); break;
      case Task::ladder: run_ladder(cfg, b); break;
      case Task::invariance_suite: run_invariance(cfg, b); break;
    }
  } catch (const std::exception& e) {
    throw std::runtime_error(to_string(cfg.task) + ": " + e.what());
  }
  return b;
}

double root_list_deviation(const std::vector<ChannelRoot>& a, const std::vector<ChannelRoot>& b) {
  auto expand = [](const std::vector<ChannelRoot>& roots) {
    std::vector<std::pair<int, double>> out;
    for (const ChannelRoot& r : roots)
      for (int m = 0; m < r.multiplicity; ++m) out.emplace_back(static_cast<int>(r.axis), r.value);
    std::sort(out.begin(), out.end());
    return out;
  };
  const auto ea = expand(a), eb = expand(b);
  if (ea.size() != eb.size()) return std::numeric_limits<double>::infinity();
  double dev = 0.0;
  for (std::size_t k = 0; k < ea.size(); ++k) {
    if (ea[k].first != eb[k].first) return std::numeric_limits<double>::infinity();
    dev = std::max(dev, std::abs(ea[k].second - eb[k].second));
  }
  return dev;
}

InvarianceReport invariance_suite(int samples, std::uint64_t seed, double R, double s_max) {
  InvarianceReport rep;
  rep.table = {"invariance-suite", {"sample", "phi", "check", "roots", "max_deviation"}, {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::uniform_real_distribution<double> magnitude(0.3, 3.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

  auto roots_of = [&](const TwoBodyChannelSet& c) {
    return all_roots(ChannelMatrixSpec::finite(c, R), s_max, true, std::nullopt).roots;
  };
  auto count = [](const std::vector<ChannelRoot>& roots) {
    long long n = 0;
    for (const auto& r : roots) n += r.multiplicity;
    return n;
  };

  for (int k = 0; k < samples; ++k) {
    Mat3 g;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g(i, j) = entry(rng);
    const Mat3 v = Eigen::HouseholderQR<Mat3>(g).householderQ();
    Vec3 a;
    for (int i = 0; i < 3; ++i) a(i) = (entry(rng) < 0 ? -1.0 : 1.0) * magnitude(rng);
    Mat3 m = v * a.asDiagonal() * v.transpose();
    m = 0.5 * (m + m.transpose());
    const ScatteringMatrix A = ScatteringMatrix::from_matrix(m);
    const double phi = angle(rng);

    const TwoBodyChannelSet base = eigenchannels(A);
    const auto before = roots_of(base);
    const auto after = roots_of(eigenchannels(one_body_rotation(phi, A)));
    const double dev = root_list_deviation(before, after);
    if (!std::isfinite(dev)) ++rep.mismatched_lists;
    rep.max_rotation_deviation = std::max(rep.max_rotation_deviation, dev);
    rep.table.rows.push_back({static_cast<long long>(k), phi, std::string("one_body_rotation"),
                              count(before), dev});

    for (int flip = 0; flip < 3; ++flip) {
      const auto flipped = roots_of(base.with_flipped_sign(flip));
      const double d = root_list_deviation(before, flipped);
      if (!std::isfinite(d)) ++rep.mismatched_lists;
      rep.max_sign_flip_deviation = std::max(rep.max_sign_flip_deviation, d);
      rep.table.rows.push_back({static_cast<long long>(k), phi,
                                "sign_flip_" + to_string(static_cast<Channel>(flip)),
                                count(flipped), d});
    }
  }
  return rep;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_field(row[c]);
    out += "\n";
  }
  return out;
}

std::string to_json(const ResultBundle& b) {
  ordered_json j;
  ordered_json config = ordered_json::object();
  std::istringstream lines(b.config_text);
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) config[line.substr(0, eq)] = line.substr(eq + 3);
  }
  j["metadata"] = {{"tool", "spinor-efimov"},
                   {"version", kVersion},
                   {"task", to_string(b.task)},
                   {"timestamp", b.timestamp},
                   {"config", config}};
  ordered_json tables = ordered_json::object();
  for (const Table& t : b.tables) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows) {
      ordered_json obj = ordered_json::object();
      for (std::size_t c = 0; c < t.columns.size() && c < row.size(); ++c)
        obj[t.columns[c]] = json_cell(row[c]);
      rows.push_back(std::move(obj));
    }
    tables[t.name] = std::move(rows);
  }
  j["tables"] = std::move(tables);
  j["warnings"] = b.warnings;
  j["errors"] = b.errors;
  return j.dump(2) + "\n";
}

std::vector<std::string> write_outputs(ResultBundle& b, const std::string& out_dir,
                                       const std::vector<Format>& formats) {
  namespace fs = std::filesystem;
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + out_dir + "'");
  const std::string stem = to_string(b.task);
  std::vector<std::string> written;
  auto wants = [&](Format f) { return std::find(formats.begin(), formats.end(), f) != formats.end(); };

  if (wants(Format::svg)) {
    if (b.sweep) {
      const fs::path p = dir / (stem + ".svg");
      FigureOptions opts;
      opts.x_axis = b.figure_axis;
      const Figure fig = emit_figure(*b.sweep, p.string(), opts);
      b.warnings.insert(b.warnings.end(), fig.warnings.begin(), fig.warnings.end());
      written.push_back(p.string());
    } else {
      b.warnings.push_back("svg: task " + stem + " has no figure");
    }
  }
  if (wants(Format::csv) && !b.tables.empty()) {
    const fs::path p = dir / (stem + ".csv");
    write_file(p, to_csv(b.tables.front()));
    written.push_back(p.string());
  }
  if (wants(Format::json)) {
    const fs::path p = dir / (stem + ".json");
    write_file(p, to_json(b));
    written.push_back(p.string());
  }
  return written;
}

}  // namespace spinor_efimov
