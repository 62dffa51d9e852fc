// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinor_efimov/hyperradial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

namespace spinor_efimov {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Hyperradial problem in x = ln R with F = e^{x/2} y:
//   y'' = f(x) y,  f = 1/4 + q(x) - 2 mu E e^{2x},  q = 2 mu R^2 U(R).
class LogGridProblem {
 public:
  LogGridProblem(const AdiabaticPotential& U, std::size_t channel, double r0, double R_max,
                 int points_per_decade)
      : mu_(U.hyperradial_mass) {
    const double x0 = std::log(r0);
    const double x1 = std::log(R_max);
    h_ = std::log(10.0) / points_per_decade;
    const std::size_t n = static_cast<std::size_t>(std::ceil((x1 - x0) / h_)) + 1;
    q_.resize(n);
    e2x_.resize(n);

    std::vector<double> xs(U.R.size()), qs(U.R.size());
    for (std::size_t k = 0; k < U.R.size(); ++k) {
      xs[k] = std::log(U.R[k]);
      qs[k] = 2.0 * mu_ * U.R[k] * U.R[k] * U.U[channel][k];
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double x = x0 + h_ * static_cast<double>(k);
      e2x_[k] = std::exp(2.0 * x);
      q_[k] = interpolate(xs, qs, x);
    }
    min_potential_ = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k)
      min_potential_ = std::min(min_potential_, q_[k] / (2.0 * mu_ * e2x_[k]));
  }

  std::size_t size() const noexcept { return q_.size(); }
  double min_potential() const noexcept { return min_potential_; }
  double potential_at_end() const noexcept {
    return q_.back() / (2.0 * mu_ * e2x_.back());
  }

  double f(std::size_t k, double E) const noexcept {
    return 0.25 + q_[k] - 2.0 * mu_ * E * e2x_[k];
  }

  /// Last grid index inside the classically allowed region (f < 0), or 0.
  std::size_t last_allowed(double E) const noexcept {
    for (std::size_t k = size() - 1; k > 0; --k)
      if (f(k, E) < 0.0) return k;
    return 0;
  }

  /// End of the integration range: past the outer turning point until the
  /// WKB decay exponent reaches 60, or the grid end.
  std::size_t tail_end(double E) const noexcept {
    std::size_t k = std::max<std::size_t>(last_allowed(E), 2);
    double decay = 0.0;
    while (k + 1 < size() && decay < 60.0) {
      decay += h_ * std::sqrt(std::max(f(k, E), 0.0));
      ++k;
    }
    return k;
  }

  /// Zeros of the outward solution in (x0, x_end]: the Sturm count of
  /// Dirichlet eigenvalues below E.
  int count_nodes(double E) const {
    const std::vector<double> y = integrate(E, 0, tail_end(E));
    int nodes = 0;
    for (std::size_t k = 1; k + 1 < y.size(); ++k)
      if (y[k + 1] == 0.0 || (y[k + 1] < 0) != (y[k] < 0)) ++nodes;
    return nodes;
  }

  /// Interior nodes of the outward and inward solutions joined at the outer
  /// turning point.
  int matched_nodes(double E) const {
    const std::size_t end = tail_end(E);
    const std::size_t turn = std::clamp<std::size_t>(last_allowed(E), 2, end - 2);
    const std::vector<double> out = integrate(E, 0, turn);
    const std::vector<double> in = integrate(E, end, turn);  // in[i] at grid end - i
    const double scale = out[turn] / in[end - turn];
    std::vector<double> y(end + 1);
    for (std::size_t k = 0; k <= turn; ++k) y[k] = out[k];
    for (std::size_t k = turn; k <= end; ++k) y[k] = in[end - k] * scale;
    int nodes = 0;
    for (std::size_t k = 1; k + 1 < end; ++k)
      if (y[k] != 0.0 && (y[k + 1] < 0) != (y[k] < 0)) ++nodes;
    return nodes;
  }

 private:
  // Numerov from grid index `from` toward `to`, starting with y = 0, y = h.
  // Element i sits at grid index from + i (outward) or from - i (inward).
  std::vector<double> integrate(double E, std::size_t from, std::size_t to) const {
    const double h2 = h_ * h_ / 12.0;
    const bool outward = to >= from;
    const std::size_t len = (outward ? to - from : from - to) + 1;
    auto grid = [&](std::size_t i) { return outward ? from + i : from - i; };
    std::vector<double> y(len, 0.0);
    if (len < 2) return y;
    y[1] = h_;
    double w_prev = 1.0 - h2 * f(grid(0), E);
    double w = 1.0 - h2 * f(grid(1), E);
    for (std::size_t i = 1; i + 1 < len; ++i) {
      const double w_next = 1.0 - h2 * f(grid(i + 1), E);
      y[i + 1] = ((12.0 - 10.0 * w) * y[i] - w_prev * y[i - 1]) / w_next;
      w_prev = w;
      w = w_next;
      if (std::abs(y[i + 1]) > 1e200)
        for (std::size_t j = 0; j <= i + 1; ++j) y[j] *= 1e-200;
    }
    return y;
  }

  static double interpolate(const std::vector<double>& xs, const std::vector<double>& ys,
                            double x) {
    if (xs.size() == 1 || x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
    return ys[j - 1] + t * (ys[j] - ys[j - 1]);
  }

  double mu_;
  double h_ = 0.0;
  double min_potential_ = 0.0;
  std::vector<double> q_;
  std::vector<double> e2x_;
};

}  // namespace

AdiabaticPotential potential(const std::vector<RootCurve>& curves, const std::vector<double>& R,
                             const PhysicalConvention& conv) {
  AdiabaticPotential out;
  out.R = R;
  out.hyperradial_mass = conv.hyperradial_mass();
  for (const RootCurve& c : curves) {
    if (c.samples.size() != R.size())
      throw std::invalid_argument("potential: curve '" + c.label + "' does not match the R grid");
    std::vector<double> s2(R.size()), u(R.size());
    for (std::size_t k = 0; k < R.size(); ++k) {
      if (!c.samples[k]) {
        const double lo = R[k == 0 ? 0 : k - 1];
        const double hi = R[std::min(k + 1, R.size() - 1)];
        throw std::runtime_error("potential: root curve '" + c.label + "' has a gap in R [" +
                                 fmt(lo) + ", " + fmt(hi) + "]");
      }
      s2[k] = c.samples[k]->s_squared();
      u[k] = (s2[k] - 0.25) / (2.0 * out.hyperradial_mass * R[k] * R[k]);
    }
    out.labels.push_back(c.label);
    out.s_squared.push_back(std::move(s2));
    out.U.push_back(std::move(u));
  }
  return out;
}

std::vector<RootCurve> root_curves(const SweepTable& r_table) {
  std::map<int, RootCurve> by_id;
  const std::size_t n = r_table.rows.size();
  for (std::size_t k = 0; k < n; ++k) {
    const SweepRow& row = r_table.rows[k];
    for (std::size_t r = 0; r < row.roots.size(); ++r) {
      for (int id : row.curves[r]) {
        RootCurve& c = by_id[id];
        if (c.samples.empty()) {
          c.samples.resize(n);
          c.label = to_string(row.roots[r].axis) + "#" + std::to_string(id);
        }
        c.samples[k] = AxisValue{row.roots[r].axis, row.roots[r].value};
      }
    }
  }
  std::vector<RootCurve> out;
  for (auto& [id, c] : by_id) out.push_back(std::move(c));
  return out;
}

AdiabaticPotential unitary_potential(double kappa, const std::vector<double>& R,
                                     const PhysicalConvention& conv) {
  RootCurve c{"unitary", {}};
  c.samples.assign(R.size(), AxisValue{Axis::imaginary, kappa});
  return potential({c}, R, conv);
}

LadderSpectrum bound_states(const AdiabaticPotential& U, double r0, int n_levels,
                            std::size_t channel, const LadderOptions& opts) {
  if (channel >= U.channels()) throw std::out_of_range("bound_states: no such channel");
  if (U.R.empty()) throw std::invalid_argument("bound_states: empty potential grid");
  if (!(r0 > 0.0)) throw std::invalid_argument("bound_states: r0 must be positive");
  double spacing = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < U.R.size(); ++k) spacing = std::min(spacing, U.R[k] - U.R[k - 1]);
  if (std::isfinite(spacing) && r0 < 10.0 * spacing)
    throw std::invalid_argument("bound_states: r0 must be at least 10x the smallest grid spacing");

  LadderSpectrum out;
  out.r0 = r0;
  const double mu = U.hyperradial_mass;
  constexpr double kShallowest = 1e-300;

  double R_max = r0 * 1e3;
  for (;;) {
    LogGridProblem prob(U, channel, r0, R_max, opts.points_per_decade);
    out.R_max = R_max;
    out.energies.clear();
    out.nodes.clear();

    const double deep = prob.min_potential();
    const int available = deep < 0.0 ? prob.count_nodes(-kShallowest) : 0;
    const int want = std::min(available, n_levels);
    double t_deep = deep < 0.0 ? std::log(-deep) : 0.0;
    for (int n = 0; n < want; ++n) {
      // E = -exp(t); count_nodes decreases with t
      double lo = std::log(kShallowest), hi = t_deep;
      while (hi - lo > 0.1 * opts.energy_rel_tol) {
        const double mid = 0.5 * (lo + hi);
        if (prob.count_nodes(-std::exp(mid)) > n)
          lo = mid;
        else
          hi = mid;
      }
      const double E = -std::exp(0.5 * (lo + hi));
      out.energies.push_back(E);
      out.nodes.push_back(prob.matched_nodes(E));
      t_deep = 0.5 * (lo + hi);
    }

    auto converged = [&](double E) {
      return std::abs(E) > 100.0 * std::abs(prob.potential_at_end()) &&
             std::sqrt(2.0 * mu * std::abs(E)) * R_max >= 30.0;
    };
    const bool last_ok = out.energies.empty() || converged(out.energies.back());
    if (static_cast<int>(out.energies.size()) == n_levels && last_ok) break;
    if (available == 0 && R_max >= 1e6 * r0) break;  // nothing bound

    if (R_max * 10.0 > opts.max_radius ||
        (!out.energies.empty() && std::abs(out.energies.back()) < 1e-280)) {
      out.depth_exhausted = true;
      while (!out.energies.empty() && !converged(out.energies.back())) {
        out.energies.pop_back();
        out.nodes.pop_back();
      }
      out.warnings.push_back("depth exhausted: resolved " + std::to_string(out.energies.size()) +
                             " of " + std::to_string(n_levels) + " levels");
      break;
    }
    R_max *= 10.0;
  }

  for (std::size_t k = 0; k + 1 < out.energies.size(); ++k)
    out.ratios.push_back(out.energies[k] / out.energies[k + 1]);
  return out;
}

double scaling_factor(double kappa) {
  if (!(kappa > 0.0)) throw std::domain_error("scaling_factor: kappa must be positive");
  if (std::isinf(kappa)) return 1.0;
  return std::exp(std::numbers::pi / kappa);
}

}  // namespace spinor_efimov
