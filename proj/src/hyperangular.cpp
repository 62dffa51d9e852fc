// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinor_efimov/hyperangular.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace spinor_efimov {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
const double kKernel = 4.0 / std::sqrt(3.0);

// sinh(k pi/6) / cosh(k pi/2), stable for large k.
double kernel_ratio(double kappa) {
  const double e3 = std::exp(-kappa * kPi / 3.0);
  return e3 * (1.0 - e3) / (1.0 + std::exp(-kappa * kPi));
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Eigen::VectorXd sorted_eigenvalues(Axis axis, double x, const ChannelMatrixSpec& spec) {
  const Eigen::MatrixXd h = scaled_channel_matrix(axis, x, spec);
  if (h.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();  // ascending
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < n; i = next++) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct RawRoot {
  double x;
  int curve;
};

RootList search_axis(const ChannelMatrixSpec& spec, Axis axis, double x_max,
                     const RootSearchOptions& opts) {
  spec.validate();
  RootList out;
  const std::vector<int> active = spec.active_states();
  if (active.empty()) return out;
  const int dim = static_cast<int>(active.size());
  const int n = std::max(opts.grid_points, 3);
  const double lo = opts.epsilon;

  std::vector<double> xs(n);
  for (int k = 0; k < n; ++k) {
    double x = lo + (x_max - lo) * k / (n - 1);
    if (axis == Axis::real) {
      // even integers: sin(s pi/2) = 0 makes the finite-a terms vanish there
      const double even = 2.0 * std::round(x / 2.0);
      if (even > 0 && std::abs(x - even) < 1e-6) x = even + 1e-6;
    }
    xs[k] = x;
  }
  Eigen::MatrixXd curves(dim, n);
  for (int k = 0; k < n; ++k) curves.col(k) = sorted_eigenvalues(axis, xs[k], spec);

  std::vector<RawRoot> raw;
  for (int c = 0; c < dim; ++c) {
    auto curve_at = [&](double x) { return sorted_eigenvalues(axis, x, spec)(c); };
    for (int k = 0; k + 1 < n; ++k) {
      const double fa = curves(c, k), fb = curves(c, k + 1);
      if (fa == 0.0) {
        raw.push_back({xs[k], c});
        continue;
      }
      if (fa * fb >= 0.0) {
        // local extremum approaching zero without a sign change
        if (k > 0) {
          const double fp = curves(c, k - 1);
          const bool dip = std::abs(fa) < std::abs(fp) && std::abs(fa) < std::abs(fb) &&
                           fp * fa > 0.0;
          const double step = std::max(std::abs(fa - fp), std::abs(fb - fa));
          if (dip && std::abs(fa) < step)
            out.warnings.push_back("grid resolution: possible unresolved root pair near " +
                                   to_string(axis) + " value " + fmt(xs[k]));
        }
        continue;
      }
      double a = xs[k], b = xs[k + 1], va = fa;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double vm = curve_at(mid);
        if (vm == 0.0) {
          a = b = mid;
          break;
        }
        if ((vm < 0) == (va < 0)) {
          a = mid;
          va = vm;
        } else {
          b = mid;
        }
      }
      if (b - a > opts.refine_tol)
        out.warnings.push_back("root refinement did not reach tolerance near " + fmt(a));
      raw.push_back({0.5 * (a + b), c});
    }
    if (curves(c, n - 1) == 0.0) raw.push_back({xs[n - 1], c});
  }

  std::sort(raw.begin(), raw.end(), [](const RawRoot& l, const RawRoot& r) { return l.x < r.x; });
  std::vector<std::vector<RawRoot>> clusters;
  for (const RawRoot& r : raw) {
    if (!clusters.empty() && r.x - clusters.back().back().x <= opts.merge_tol)
      clusters.back().push_back(r);
    else
      clusters.push_back({r});
  }

  for (const auto& cl : clusters) {
    ChannelRoot root;
    root.axis = axis;
    root.multiplicity = static_cast<int>(cl.size());
    double sum = 0.0;
    for (const auto& r : cl) sum += r.x;
    root.value = sum / cl.size();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        scaled_channel_matrix(axis, root.value, spec));
    std::vector<int> order(dim);
    for (int i = 0; i < dim; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int l, int r) {
      return std::abs(es.eigenvalues()(l)) < std::abs(es.eigenvalues()(r));
    });
    for (int k = 0; k < root.multiplicity && k < dim; ++k) {
      const int idx = order[k];
      root.residual = std::max(root.residual, std::abs(es.eigenvalues()(idx)));
      Vec6 v = Vec6::Zero();
      for (int r = 0; r < dim; ++r) v(active[r]) = es.eigenvectors()(r, idx);
      root.null_vectors.push_back(v);
    }
    out.roots.push_back(std::move(root));
  }
  sort_roots(out.roots);
  return out;
}

}  // namespace

std::string to_string(Mode m) { return m == Mode::asymptotic ? "asymptotic" : "finite"; }
std::string to_string(Axis a) { return a == Axis::real ? "real" : "imaginary"; }

// --- ChannelMatrixSpec --------------------------------------------------------

ChannelMatrixSpec ChannelMatrixSpec::asymptotic(const TwoBodyChannelSet& c) {
  ChannelMatrixSpec s{c, exchange_overlap(c), 1.0, Mode::asymptotic};
  s.validate();
  return s;
}

ChannelMatrixSpec ChannelMatrixSpec::finite(const TwoBodyChannelSet& c, double R) {
  ChannelMatrixSpec s{c, exchange_overlap(c), R, Mode::finite};
  s.validate();
  return s;
}

void ChannelMatrixSpec::validate() const {
  for (int i = 0; i < 3; ++i) {
    const ScatteringLength& a = channels.lengths[i];
    const std::string name = to_string(static_cast<Channel>(i));
    if (mode == Mode::asymptotic && a.is_finite())
      throw std::invalid_argument("asymptotic mode: channel " + name +
                                  " must be unitary or closed");
    if (mode == Mode::finite && a.is_unitary())
      throw std::invalid_argument("finite mode: channel " + name +
                                  " must be finite or closed, not unitary");
  }
  if (mode == Mode::finite && !(std::isfinite(R) && R > 0.0))
    throw std::invalid_argument("finite mode: hyperradius must be positive");
}

std::vector<int> ChannelMatrixSpec::active_states() const {
  std::vector<int> out;
  for (int i = 0; i < 3; ++i)
    if (!channels.lengths[i].is_closed()) {
      out.push_back(basis_index(i, 0));
      out.push_back(basis_index(i, 1));
    }
  return out;
}

double ChannelMatrixSpec::max_dimer_slope() const {
  if (mode == Mode::asymptotic) return 0.0;
  double m = 0.0;
  for (const auto& a : channels.lengths)
    if (a.is_finite()) m = std::max(m, kSqrt2 * R / std::abs(a.value()));
  return m;
}

double ChannelMatrixSpec::default_kappa_max() const {
  if (mode == Mode::asymptotic) return 10.0;
  double amin = std::numeric_limits<double>::infinity();
  for (const auto& a : channels.lengths)
    if (a.is_finite()) amin = std::min(amin, std::abs(a.value()));
  if (!std::isfinite(amin)) return 10.0;
  return 10.0 + 2.0 * kSqrt2 * R / amin;
}

// --- channel matrix -------------------------------------------------------------

namespace {

enum class Scaling { none, normalized };

Eigen::MatrixXd build(Axis axis, double x, const ChannelMatrixSpec& spec, Scaling scaling) {
  const std::vector<int> active = spec.active_states();
  const int dim = static_cast<int>(active.size());
  Eigen::MatrixXd m(dim, dim);

  double diag_free, diag_dimer, kernel, norm = 1.0;
  if (axis == Axis::imaginary) {
    if (scaling == Scaling::normalized) {
      diag_free = x;
      diag_dimer = std::tanh(x * kPi / 2);
      kernel = kKernel * kernel_ratio(x);
      norm = 1.0 + spec.max_dimer_slope();
    } else {
      diag_free = x * std::cosh(x * kPi / 2);
      diag_dimer = std::sinh(x * kPi / 2);
      kernel = kKernel * std::sinh(x * kPi / 6);
    }
  } else {
    diag_free = x * std::cos(x * kPi / 2);
    diag_dimer = std::sin(x * kPi / 2);
    kernel = kKernel * std::sin(x * kPi / 6);
    if (scaling == Scaling::normalized) norm = 1.0 + spec.max_dimer_slope();
  }

  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) m(r, c) = -kernel * spec.overlap(active[r], active[c]);
    const ScatteringLength& a = spec.channels.lengths[active[r] / 2];
    const double ratio = spec.mode == Mode::finite ? spec.R * a.inverse() : 0.0;
    m(r, r) += diag_free - kSqrt2 * ratio * diag_dimer;
  }
  if (norm != 1.0) m /= norm;
  return m;
}

}  // namespace

Eigen::MatrixXd channel_matrix(std::complex<double> s, const ChannelMatrixSpec& spec) {
  spec.validate();
  if (s.real() != 0.0 && s.imag() != 0.0)
    throw std::domain_error("channel_matrix: s must lie on the real or imaginary axis");
  if (s == 0.0) throw std::domain_error("channel_matrix: s = 0 is excluded");
  if (s.real() == 0.0) {
    if (s.imag() <= 0.0) throw std::domain_error("channel_matrix: kappa must be positive");
    return build(Axis::imaginary, s.imag(), spec, Scaling::none);
  }
  return build(Axis::real, s.real(), spec, Scaling::none);
}

Eigen::MatrixXd scaled_channel_matrix(Axis axis, double x, const ChannelMatrixSpec& spec) {
  if (axis == Axis::imaginary && !(x > 0.0))
    throw std::domain_error("scaled_channel_matrix: kappa must be positive");
  return build(axis, x, spec, Scaling::normalized);
}

// --- root finding -----------------------------------------------------------------

RootList find_roots_imaginary(const ChannelMatrixSpec& spec, std::optional<double> kappa_max,
                              const RootSearchOptions& opts) {
  const double kmax = kappa_max.value_or(spec.default_kappa_max());
  if (!(kmax > opts.epsilon)) throw std::invalid_argument("kappa_max must be positive");
  return search_axis(spec, Axis::imaginary, kmax, opts);
}

RootList find_roots_real(const ChannelMatrixSpec& spec, double s_max,
                         const RootSearchOptions& opts) {
  if (!(s_max >= 2.0)) throw std::invalid_argument("s_max must be at least 2");
  return search_axis(spec, Axis::real, s_max, opts);
}

SpinProfile classify_root(const ChannelRoot& root, const ThreeBodySpinBasis& basis) {
  SpinProfile p;
  if (root.null_vectors.empty()) return p;
  for (const Vec6& c : root.null_vectors) {
    const double norm2 = c.squaredNorm();
    if (norm2 == 0.0) continue;
    for (int k = 0; k < 6; ++k) p.basis_weights[k] += c(k) * c(k) / norm2;
    const Vec8 psi = basis.embedding * c;
    const double psi2 = psi.squaredNorm();
    for (int k = 0; k < 8; ++k) {
      const double w = psi(k) * psi(k) / psi2;
      switch (level_two_count(k)) {
        case 0: p.w_111 += w; break;
        case 3: p.w_222 += w; break;
        default: p.w_mixed += w; break;
      }
    }
  }
  const double n = static_cast<double>(root.null_vectors.size());
  for (double& w : p.basis_weights) w /= n;
  p.w_111 /= n;
  p.w_mixed /= n;
  p.w_222 /= n;
  return p;
}

void sort_roots(std::vector<ChannelRoot>& roots) {
  std::stable_sort(roots.begin(), roots.end(), [](const ChannelRoot& l, const ChannelRoot& r) {
    if (l.axis != r.axis) return l.axis == Axis::imaginary;
    return l.axis == Axis::imaginary ? l.value > r.value : l.value < r.value;
  });
}

// --- sweeps -------------------------------------------------------------------------

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPINOR_EFIMOV_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0 && hi >= lo) || n < 1) throw std::invalid_argument("log_grid: invalid range");
  if (n == 1) return {lo};
  std::vector<double> g(n);
  const double l0 = std::log(lo), l1 = std::log(hi);
  for (int k = 0; k < n; ++k) g[k] = std::exp(l0 + (l1 - l0) * k / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 1 || hi < lo) throw std::invalid_argument("linear_grid: invalid range");
  if (n == 1) return {lo};
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = lo + (hi - lo) * k / (n - 1);
  g.back() = hi;
  return g;
}

namespace {

SweepRow solve_row(const ChannelMatrixSpec& spec, double theta, const SweepOptions& opts) {
  SweepRow row;
  row.theta = theta;
  row.mode = spec.mode;
  if (spec.mode == Mode::finite) row.R = spec.R;
  RootList imag = find_roots_imaginary(spec, opts.kappa_max, opts.search);
  row.roots = std::move(imag.roots);
  row.warnings = std::move(imag.warnings);
  if (opts.include_real) {
    RootList real = find_roots_real(spec, opts.s_max, opts.search);
    for (auto& r : real.roots) row.roots.push_back(std::move(r));
    for (auto& w : real.warnings) row.warnings.push_back(std::move(w));
  }
  if (opts.classify) {
    const ThreeBodySpinBasis basis = three_body_basis(spec.channels);
    for (auto& r : row.roots) r.spin_profile = classify_root(r, basis);
  }
  sort_roots(row.roots);
  return row;
}

}  // namespace

SweepTable theta_sweep(const std::vector<double>& thetas,
                       const std::array<ScatteringLength, 3>& lengths, Mode mode, double R,
                       const SweepOptions& opts) {
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    if (!(thetas[k] >= 0.0 && thetas[k] <= kPi / 2))
      throw std::domain_error("theta_sweep: theta outside [0, pi/2]");
    if (k > 0 && thetas[k] < thetas[k - 1])
      throw std::invalid_argument("theta_sweep: theta grid must be ascending");
  }
  SweepTable table;
  table.lengths = lengths;
  table.rows.resize(thetas.size());
  parallel_for(thetas.size(), worker_count(opts.threads), [&](std::size_t k) {
    const TwoBodyChannelSet c = channels_from_angle(thetas[k], lengths[0], lengths[1], lengths[2]);
    const ChannelMatrixSpec spec = mode == Mode::asymptotic ? ChannelMatrixSpec::asymptotic(c)
                                                            : ChannelMatrixSpec::finite(c, R);
    table.rows[k] = solve_row(spec, thetas[k], opts);
  });
  label_curves(table);
  return table;
}

SweepTable r_sweep(const TwoBodyChannelSet& channels, const std::vector<double>& radii,
                   const SweepOptions& opts) {
  for (std::size_t k = 1; k < radii.size(); ++k)
    if (radii[k] < radii[k - 1]) throw std::invalid_argument("r_sweep: R grid must be ascending");
  SweepTable table;
  table.lengths = channels.lengths;
  table.rows.resize(radii.size());
  const double theta = channels.mixing_angle.value_or(std::numeric_limits<double>::quiet_NaN());
  parallel_for(radii.size(), worker_count(opts.threads), [&](std::size_t k) {
    table.rows[k] = solve_row(ChannelMatrixSpec::finite(channels, radii[k]), theta, opts);
  });
  label_curves(table);
  return table;
}

void label_curves(SweepTable& table) {
  int next_id = 0;
  struct Branch {
    int curve;
    double value;
  };
  for (Axis axis : {Axis::imaginary, Axis::real}) {
    std::vector<Branch> previous;
    for (SweepRow& row : table.rows) {
      row.curves.resize(row.roots.size());
      // expand by multiplicity
      std::vector<std::pair<int, double>> slots;  // (root index, value)
      for (std::size_t r = 0; r < row.roots.size(); ++r) {
        if (row.roots[r].axis != axis) continue;
        row.curves[r].assign(row.roots[r].multiplicity, -1);
        for (int m = 0; m < row.roots[r].multiplicity; ++m)
          slots.emplace_back(static_cast<int>(r), row.roots[r].value);
      }
      struct Pair {
        double dist;
        std::size_t prev, slot;
      };
      std::vector<Pair> pairs;
      for (std::size_t p = 0; p < previous.size(); ++p)
        for (std::size_t s = 0; s < slots.size(); ++s) {
          const double d = std::abs(previous[p].value - slots[s].second);
          const double tol = std::max(0.1, 0.25 * std::max(previous[p].value, slots[s].second));
          if (d <= tol) pairs.push_back({d, p, s});
        }
      std::stable_sort(pairs.begin(), pairs.end(),
                       [](const Pair& l, const Pair& r) { return l.dist < r.dist; });
      std::vector<int> slot_curve(slots.size(), -1);
      std::vector<bool> used(previous.size(), false);
      for (const Pair& p : pairs) {
        if (used[p.prev] || slot_curve[p.slot] >= 0) continue;
        used[p.prev] = true;
        slot_curve[p.slot] = previous[p.prev].curve;
      }
      std::vector<Branch> current;
      std::map<int, int> filled;  // root index -> slots filled
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (slot_curve[s] < 0) slot_curve[s] = next_id++;
        const int r = slots[s].first;
        row.curves[r][filled[r]++] = slot_curve[s];
        current.push_back({slot_curve[s], slots[s].second});
      }
      previous = std::move(current);
    }
  }
}

double max_curve_jump(const SweepTable& table, Axis axis) {
  std::map<int, std::pair<std::size_t, double>> last;  // curve -> (row, value)
  double jump = 0.0;
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const SweepRow& row = table.rows[k];
    for (std::size_t r = 0; r < row.roots.size(); ++r) {
      if (row.roots[r].axis != axis) continue;
      for (int id : row.curves[r]) {
        auto it = last.find(id);
        if (it != last.end() && it->second.first + 1 == k)
          jump = std::max(jump, std::abs(row.roots[r].value - it->second.second));
        last[id] = {k, row.roots[r].value};
      }
    }
  }
  return jump;
}

PlateauResult plateau_extract(const SweepTable& r_table, double a_alpha, double a_beta) {
  PlateauResult out;
  const double small = std::abs(a_alpha), large = std::abs(a_beta);
  if (!(small > 0) || !(large / small >= 1e4)) {
    out.reason = "no plateau: scale separation |a_beta/a_alpha| below 1e4";
    return out;
  }
  const double lo = 10.0 * small, hi = large / 10.0;

  // curve -> per-row value (NaN where absent)
  const std::size_t nrows = r_table.rows.size();
  std::map<int, std::vector<double>> curves;
  for (std::size_t k = 0; k < nrows; ++k) {
    const SweepRow& row = r_table.rows[k];
    if (!row.R) throw std::invalid_argument("plateau_extract: rows need a hyperradius");
    for (std::size_t r = 0; r < row.roots.size(); ++r) {
      if (row.roots[r].axis != Axis::imaginary) continue;
      for (int id : row.curves[r]) {
        auto& v = curves[id];
        if (v.empty()) v.assign(nrows, std::numeric_limits<double>::quiet_NaN());
        v[k] = row.roots[r].value;
      }
    }
  }
  std::vector<std::size_t> window;
  for (std::size_t k = 0; k < nrows; ++k)
    if (*r_table.rows[k].R >= lo && *r_table.rows[k].R <= hi) window.push_back(k);
  if (window.size() < 3) {
    out.reason = "no plateau: fewer than three grid points inside the window";
    return out;
  }

  for (const auto& [id, values] : curves) {
    bool spans = true;
    for (std::size_t k : window) spans = spans && std::isfinite(values[k]);
    if (!spans) continue;
    Plateau best;
    best.curve = id;
    best.flatness = std::numeric_limits<double>::infinity();
    for (std::size_t k : window) {
      auto lnR = [&](std::size_t j) { return std::log(*r_table.rows[j].R); };
      std::size_t a = k, b = k;
      if (k > 0 && std::isfinite(values[k - 1])) a = k - 1;
      if (k + 1 < nrows && std::isfinite(values[k + 1])) b = k + 1;
      if (a == b) continue;
      const double slope = std::abs((values[b] - values[a]) / (lnR(b) - lnR(a)));
      if (slope < best.flatness) {
        best.flatness = slope;
        best.value = values[k];
        best.R = *r_table.rows[k].R;
      }
    }
    best.accepted = best.flatness < 1e-2;
    out.candidates.push_back(best);
    if (best.accepted) out.plateaus.push_back(best);
  }
  std::sort(out.plateaus.begin(), out.plateaus.end(),
            [](const Plateau& l, const Plateau& r) { return l.value > r.value; });
  out.found = !out.plateaus.empty();
  if (!out.found) out.reason = "no plateau: no curve is stationary inside the window";
  return out;
}

}  // namespace spinor_efimov
