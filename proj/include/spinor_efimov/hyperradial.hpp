// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hyperradial.hpp
 * @brief Adiabatic potentials U_nu(R) = (s_nu^2 - 1/4) / (2 mu R^2) and the
 *        single-channel hyperradial bound-state ladder.
 *
 * The hyperradial mass equals the atomic mass (see CONVENTIONS.md); with the
 * sqrt(2) R/a channel term this puts the dimer threshold at -1/(m a^2).
 */

#pragma once

#include "spinor_efimov/hyperangular.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spinor_efimov {

struct PhysicalConvention {
  double mass = 1.0;
  double hyperradial_mass() const noexcept { return mass; }
};

/// One root value on a given axis; s^2 = value^2 (real) or -value^2 (imaginary).
struct AxisValue {
  Axis axis = Axis::imaginary;
  double value = 0.0;
  double s_squared() const noexcept {
    return axis == Axis::real ? value * value : -value * value;
  }
};

/// A root curve sampled on an R grid; nullopt marks a gap.
struct RootCurve {
  std::string label;
  std::vector<std::optional<AxisValue>> samples;
};

struct AdiabaticPotential {
  std::vector<double> R;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> s_squared;  // per channel
  std::vector<std::vector<double>> U;          // per channel
  double hyperradial_mass = 1.0;

  std::size_t channels() const noexcept { return U.size(); }
};

/// Elementwise U = (s^2 - 1/4)/(2 mu R^2). A gap in any curve throws
/// std::runtime_error naming the R interval.
AdiabaticPotential potential(const std::vector<RootCurve>& curves, const std::vector<double>& R,
                             const PhysicalConvention& conv = {});

/// Imaginary-axis curves of an R sweep, one RootCurve per continuity label.
std::vector<RootCurve> root_curves(const SweepTable& r_table);

/// The scale-free potential -(kappa^2 + 1/4)/(2 mu R^2) on the given grid.
AdiabaticPotential unitary_potential(double kappa, const std::vector<double>& R,
                                     const PhysicalConvention& conv = {});

struct LadderOptions {
  int points_per_decade = 4000;
  double energy_rel_tol = 1e-8;
  double max_radius = 1e140;
};

struct LadderSpectrum {
  double r0 = 0.0;
  double R_max = 0.0;
  std::vector<double> energies;  // deepest first
  std::vector<int> nodes;        // interior nodes of each eigenfunction
  std::vector<double> ratios;    // E_n / E_{n+1}
  bool depth_exhausted = false;
  std::vector<std::string> warnings;
};

/// Bound states of -(1/2mu) F'' + U F = E F with F(r0) = 0 and a decaying
/// tail, channel `channel` of U. Returns up to n_levels states, deepest first.
LadderSpectrum bound_states(const AdiabaticPotential& U, double r0, int n_levels,
                            std::size_t channel = 0, const LadderOptions& opts = {});

/// e^{pi/kappa}; 1 for kappa = +inf. Throws for kappa <= 0.
double scaling_factor(double kappa);

}  // namespace spinor_efimov
