// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "oracles.hpp"
#include "spinor_efimov/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <tuple>

using namespace spinor_efimov;

namespace {

constexpr double pi = std::numbers::pi;
using L = ScatteringLength;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

ChannelMatrixSpec anchor(double theta) {
  return ChannelMatrixSpec::asymptotic(
      channels_from_angle(theta, L::closed(), L::unitary(), L::closed()));
}

Outcome identical_boson_anchor() {
  const auto roots = find_roots_imaginary(anchor(pi / 2)).roots;
  if (roots.size() != 1) return {false, std::to_string(roots.size()) + " imaginary roots"};
  const auto& r = roots[0];
  return {r.multiplicity == 1 && std::abs(r.value - 1.00624) <= 1e-4,
          "kappa=" + fmt("%.8f", r.value) + " multiplicity=" + std::to_string(r.multiplicity)};
}

Outcome mixed_channel_anchor() {
  const auto roots = find_roots_imaginary(anchor(0.0)).roots;
  int total = 0;
  bool close = !roots.empty();
  for (const auto& r : roots) {
    total += r.multiplicity;
    close = close && std::abs(r.value - 0.41370) <= 1e-4;
  }
  return {close && total == 2,
          "kappa=" + (roots.empty() ? std::string("none") : fmt("%.8f", roots[0].value)) +
              " total multiplicity=" + std::to_string(total)};
}

Outcome spin_classification() {
  auto profile = [](double theta) {
    const auto spec = anchor(theta);
    const auto roots = find_roots_imaginary(spec).roots;
    return classify_root(roots.at(0), three_body_basis(spec.channels));
  };
  const SpinProfile half = profile(pi / 2), zero = profile(0.0), mid = profile(pi / 4);
  const bool pass = std::abs(half.w_111 - 1) <= 1e-8 && std::abs(zero.w_mixed - 1) <= 1e-8 &&
                    mid.w_111 > 0.05 && mid.w_mixed > 0.05;
  return {pass, "w111(pi/2)=" + fmt("%.10f", half.w_111) + " wmixed(0)=" +
                    fmt("%.10f", zero.w_mixed) + " pi/4: w111=" + fmt("%.4f", mid.w_111) +
                    " wmixed=" + fmt("%.4f", mid.w_mixed)};
}

Outcome sweep_continuity() {
  const auto table = theta_sweep(linear_grid(0, pi / 2, 201),
                                 {L::closed(), L::unitary(), L::closed()}, Mode::asymptotic, 1.0);
  const double jump = max_curve_jump(table);
  const auto& first = table.rows.front().roots;
  const auto& last = table.rows.back().roots;
  const bool ends = first.size() == 1 && first[0].multiplicity == 2 &&
                    std::abs(first[0].value - 0.41370) <= 1e-4 && last.size() == 1 &&
                    last[0].multiplicity == 1 && std::abs(last[0].value - 1.00624) <= 1e-4;
  return {jump < 0.05 && ends, "max jump=" + fmt("%.5f", jump) + (ends ? " endpoints ok" : " endpoints off")};
}

Outcome finite_plateau() {
  const auto grid = log_grid(1e-1, 1e7, 161);
  bool pass = true;
  std::string detail;
  for (auto [theta, target, curves] : {std::tuple{pi / 2, 1.00624, 1}, std::tuple{0.0, 0.41370, 2}}) {
    const auto c = channels_from_angle(theta, L::finite(1.0), L::finite(1e6), L::closed());
    const auto pr = plateau_extract(r_sweep(c, grid), 1.0, 1e6);
    int near = 0;
    for (const auto& p : pr.plateaus) {
      const bool ok = std::abs(p.value - target) <= 1e-2;
      near += ok;
      if (ok) detail += fmt(theta == 0.0 ? "theta=0: %.5f " : "theta=pi/2: %.5f ", p.value);
    }
    pass = pass && pr.found && near == curves;
  }
  return {pass, detail};
}

Outcome free_limit() {
  const auto c = channels_from_angle(pi / 2, L::closed(), L::finite(1.0), L::closed());
  const auto spec = ChannelMatrixSpec::finite(c, 1e6);
  const auto roots = find_roots_real(spec, 5.0).roots;
  const auto scan = oracle::determinant_scan(spec, 1e-3, 5.0, 200000);
  if (roots.empty() || scan.empty()) return {false, "no real roots"};
  std::vector<double> distinct;
  for (const auto& r : roots)
    if (distinct.empty() || r.value - distinct.back() > 1e-2) distinct.push_back(r.value);
  const bool pass = distinct.size() >= 2 && std::abs(distinct[0] - 2) < 1e-3 &&
                    std::abs(distinct[1] - 4) < 1e-3 && std::abs(scan[0] - roots[0].value) < 1e-6;
  return {pass, "lowest clusters " + fmt("%.7f", distinct[0]) +
                    (distinct.size() > 1 ? ", " + fmt("%.7f", distinct[1]) : "") +
                    "; determinant scan " + fmt("%.7f", scan[0])};
}

Outcome dimer_limit() {
  const double a = 1.0, R = 100.0;
  const auto c = channels_from_angle(pi / 2, L::closed(), L::finite(a), L::closed());
  const auto roots = find_roots_imaginary(ChannelMatrixSpec::finite(c, R)).roots;
  if (roots.empty()) return {false, "no imaginary root"};
  const auto u = potential({RootCurve{"dimer", {AxisValue{Axis::imaginary, roots[0].value}}}}, {R});
  const double U = u.U[0][0], target = -1.0 / (PhysicalConvention{}.mass * a * a);
  return {std::abs(U - target) <= 0.01 * std::abs(target),
          "U=" + fmt("%.6f", U) + " target=" + fmt("%.6f", target)};
}

Outcome efimov_ladder() {
  const double kappa = 1.00624, r0 = 1e-3;
  const auto ladder = bound_states(unitary_potential(kappa, log_grid(r0, 10 * r0, 4001)), r0, 4);
  const double expected = std::exp(2 * pi / kappa);
  if (ladder.ratios.size() < 3) return {false, "fewer than four levels"};
  const double dev = std::abs(ladder.ratios[2] - expected) / expected;
  const double sf = scaling_factor(kappa);
  return {dev < 0.02 && std::abs(sf - 22.69) <= 0.01,
          "third ratio=" + fmt("%.4f", ladder.ratios[2]) + " (expected " + fmt("%.4f", expected) +
              ") scaling factor=" + fmt("%.4f", sf)};
}

Outcome one_body_invariance() {
  const InvarianceReport rep = invariance_suite(50, 20160401, 1.0, 6.0);
  const double worst = std::max(rep.max_rotation_deviation, rep.max_sign_flip_deviation);
  return {rep.mismatched_lists == 0 && worst < 1e-8,
          "max rotation deviation=" + fmt("%.3g", rep.max_rotation_deviation) +
              " max sign-flip deviation=" + fmt("%.3g", rep.max_sign_flip_deviation)};
}

Outcome eigensolver_agreement() {
  std::mt19937_64 rng(20160401);
  std::uniform_real_distribution<double> u(-10, 10);
  double worst_value = 0, worst_vector = 0;
  for (int k = 0; k < 1000; ++k) {
    const double a11 = u(rng), a22 = u(rng), a12 = u(rng), a33 = u(rng);
    const auto closed = toy_closed_form(a11, a22, a12, a33);
    const auto jac = jacobi_eigen(ScatteringMatrix::toy(a11, a22, a12, a33).matrix());
    for (int i = 0; i < 3; ++i) {
      const double a = closed.lengths[i].value();
      int best = 0;
      for (int j = 1; j < 3; ++j)
        if (std::abs(jac.values(j) - a) < std::abs(jac.values(best) - a)) best = j;
      worst_value = std::max(worst_value, std::abs(jac.values(best) - a) / std::max(1.0, std::abs(a)));
      worst_vector = std::max(
          worst_vector, 1 - std::abs(closed.vectors.col(i).dot(jac.vectors.col(best))));
    }
  }
  return {worst_value <= 1e-10 && worst_vector <= 1e-10,
          "max relative eigenvalue gap=" + fmt("%.3g", worst_value) +
              " max 1-|overlap|=" + fmt("%.3g", worst_vector)};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // <= 0: no runtime limit
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "identical-boson anchor", 1, identical_boson_anchor},
      {2, "mixed-channel anchor", 1, mixed_channel_anchor},
      {3, "spin classification", 0, spin_classification},
      {4, "theta-sweep continuity", 10, sweep_continuity},
      {5, "finite-R plateau", 30, finite_plateau},
      {6, "free limit", 0, free_limit},
      {7, "dimer limit", 0, dimer_limit},
      {8, "Efimov ladder", 5, efimov_ladder},
      {9, "one-body unitary invariance", 60, one_body_invariance},
      {10, "closed-form/numeric eigensolver agreement", 5, eigensolver_agreement},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.limit_s <= 0 || secs < c.limit_s;
    const bool pass = out.pass && in_time;
    failures += !pass;
    std::printf("[%s] criterion %2d  %-42s %s; %.3f s%s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs,
                c.limit_s > 0 ? (" (limit " + fmt("%g", c.limit_s) + " s)").c_str() : "");
  }
  std::printf("%d of %zu criteria passed\n", int(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
