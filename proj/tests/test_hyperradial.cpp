// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinor_efimov/hyperradial.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace spinor_efimov;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;
using L = ScatteringLength;

AdiabaticPotential unitary_on(double kappa, double r0) {
  return unitary_potential(kappa, log_grid(r0, 10 * r0, 4001));
}

}  // namespace

TEST_CASE("potential from a constant imaginary root") {
  const auto u = unitary_potential(1.00624, {1.0, 2.0});
  CHECK(u.U[0][0] == Approx(-(1.00624 * 1.00624 + 0.25) / 2));
  CHECK(u.U[0][0] == Approx(-0.63126).epsilon(1e-5));
  CHECK(u.U[0][1] == Approx(u.U[0][0] / 4));
}

TEST_CASE("potential from the free-limit real root") {
  RootCurve c{"free", {AxisValue{Axis::real, 2.0}}};
  const auto u = potential({c}, {1.0});
  CHECK(u.U[0][0] == Approx(1.875));
  PhysicalConvention heavy;
  heavy.mass = 2.0;
  CHECK(potential({c}, {1.0}, heavy).U[0][0] == Approx(1.875 / 2));
}

TEST_CASE("potential identity and sign on a real sweep") {
  const auto c = channels_from_angle(0.7, L::finite(1.0), L::finite(50.0), L::closed());
  SweepOptions opts;
  opts.include_real = true;
  const auto radii = log_grid(0.1, 1e3, 41);
  const auto table = r_sweep(c, radii, opts);
  for (const RootCurve& curve : root_curves(table)) {
    // potential() needs gap-free curves; evaluate sample by sample
    for (std::size_t k = 0; k < radii.size(); ++k) {
      if (!curve.samples[k]) continue;
      const auto u = potential({RootCurve{curve.label, {curve.samples[k]}}}, {radii[k]});
      const double s2 = curve.samples[k]->s_squared();
      CHECK(std::abs(u.U[0][0] * 2 * radii[k] * radii[k] + 0.25 - s2) <=
            1e-10 * std::max(1.0, std::abs(s2)));
      if (curve.samples[k]->axis == Axis::imaginary) CHECK(u.U[0][0] < 0);
    }
  }
}

TEST_CASE("potential reports gaps with their R interval") {
  RootCurve c{"imaginary#3", {AxisValue{Axis::imaginary, 1.0}, std::nullopt, AxisValue{}}};
  try {
    potential({c}, {1.0, 2.0, 4.0});
    FAIL("expected a gap error");
  } catch (const std::runtime_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("imaginary#3") != std::string::npos);
    CHECK(msg.find("[1, 4]") != std::string::npos);
  }
  CHECK_THROWS_AS(potential({c}, {1.0}), std::invalid_argument);
}

TEST_CASE("dimer limit fixes the hyperradial mass") {
  const double a = 1.0, R = 100.0;
  const auto c = channels_from_angle(pi / 2, L::closed(), L::finite(a), L::closed());
  const auto roots = find_roots_imaginary(ChannelMatrixSpec::finite(c, R));
  REQUIRE_FALSE(roots.roots.empty());
  const double kappa = roots.roots.front().value;
  CHECK(kappa == Approx(std::sqrt(2.0) * R / a).epsilon(1e-3));
  const auto u = potential({RootCurve{"dimer", {AxisValue{Axis::imaginary, kappa}}}}, {R});
  CHECK(std::abs(u.U[0][0] + 1 / (a * a)) < 0.01 / (a * a));
}

TEST_CASE("scaling factor") {
  CHECK(scaling_factor(1.00624) == Approx(22.69).epsilon(0.01 / 22.69));
  CHECK(scaling_factor(0.41370) == Approx(std::exp(pi / 0.41370)).epsilon(1e-14));
  CHECK(std::abs(scaling_factor(0.41370) - 1986.0) < 0.1);
  CHECK(scaling_factor(INFINITY) == 1.0);
  CHECK(scaling_factor(1e9) == Approx(1.0));
  CHECK_THROWS_AS(scaling_factor(0.0), std::domain_error);
  CHECK_THROWS_AS(scaling_factor(-1.0), std::domain_error);
}

TEST_CASE("Efimov ladder converges to the geometric ratio") {
  const double kappa = 1.00624;
  const double expected = std::exp(2 * pi / kappa);
  CHECK(expected == Approx(515.03).epsilon(1e-4));
  const auto ladder = bound_states(unitary_on(kappa, 1e-3), 1e-3, 5);
  REQUIRE(ladder.energies.size() == 5);
  REQUIRE(ladder.ratios.size() == 4);
  CHECK(std::abs(ladder.ratios[2] - expected) / expected < 0.02);
  double prev = INFINITY;
  for (int n = 0; n < 3; ++n) {
    const double dev = std::abs(ladder.ratios[n] - expected) / expected;
    CHECK(dev < prev);
    prev = dev;
  }
  for (std::size_t n = 0; n < ladder.nodes.size(); ++n) CHECK(ladder.nodes[n] == int(n));
  for (double E : ladder.energies) CHECK(E > -(kappa * kappa + 0.25) / (2 * 1e-6));
  CHECK_FALSE(ladder.depth_exhausted);
}

TEST_CASE("ladder with the weak mixed-channel root") {
  const double kappa = 0.41370;
  const double expected = std::exp(2 * pi / kappa);
  CHECK(expected == Approx(3.96e6).epsilon(0.01));
  const auto ladder = bound_states(unitary_on(kappa, 1e-3), 1e-3, 3);
  REQUIRE(ladder.ratios.size() >= 1);
  CHECK(std::abs(ladder.ratios[0] - expected) / expected < 0.05);
  for (std::size_t n = 0; n < ladder.nodes.size(); ++n) CHECK(ladder.nodes[n] == int(n));
}

TEST_CASE("wall position covariance") {
  const double kappa = 1.00624, lambda = 10.0;
  const auto a = bound_states(unitary_on(kappa, 1e-3), 1e-3, 3);
  const auto b = bound_states(unitary_on(kappa, lambda * 1e-3), lambda * 1e-3, 3);
  REQUIRE(a.energies.size() == 3);
  REQUIRE(b.energies.size() == 3);
  for (int n = 0; n < 3; ++n)
    CHECK(std::abs(b.energies[n] * lambda * lambda / a.energies[n] - 1) < 1e-6);
}

TEST_CASE("repulsive channel binds nothing") {
  const auto grid = log_grid(1e-3, 1e-2, 4001);
  RootCurve c{"free", {}};
  c.samples.assign(grid.size(), AxisValue{Axis::real, 2.0});
  const auto ladder = bound_states(potential({c}, grid), 1e-3, 3);
  CHECK(ladder.energies.empty());
  CHECK(ladder.ratios.empty());
}

TEST_CASE("bound_states preconditions") {
  const auto u = unitary_on(1.0, 1e-3);
  CHECK_THROWS_AS(bound_states(u, 1e-3, 2, 1), std::out_of_range);
  CHECK_THROWS_AS(bound_states(u, -1.0, 2), std::invalid_argument);
  const auto coarse = unitary_potential(1.0, log_grid(1e-3, 1.0, 4));
  CHECK_THROWS_AS(bound_states(coarse, 1e-3, 2), std::invalid_argument);
}
