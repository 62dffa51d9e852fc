// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hyperangular.hpp
 * @brief Fixed-R channel matrix and its roots s_nu(R).
 *
 * The zero-range hyperangular problem reduces to det M(s; R) = 0 with
 *
 *   M[(i,m),(j,m')] = delta * [ s cos(s pi/2) - sqrt(2) (R/a_i) sin(s pi/2) ]
 *                     - (4/sqrt(3)) sin(s pi/6) O[(i,m),(j,m')]
 *
 * where O is the spin-exchange overlap. Closed channels (a = 0) are removed
 * before evaluation. On the imaginary axis s = i kappa the matrix is i H(kappa)
 * with H real symmetric, so roots are found by tracking the sorted eigenvalue
 * curves of H (or of M on the real axis) and bisecting each sign change.
 */

#pragma once

#include "spinor_efimov/spin_algebra.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace spinor_efimov {

enum class Mode { asymptotic, finite };
enum class Axis { real, imaginary };

std::string to_string(Mode m);
std::string to_string(Axis a);

struct ChannelMatrixSpec {
  TwoBodyChannelSet channels;
  ExchangeOverlap overlap;
  double R = 1.0;  // ignored in asymptotic mode
  Mode mode = Mode::asymptotic;

  static ChannelMatrixSpec asymptotic(const TwoBodyChannelSet& c);
  static ChannelMatrixSpec finite(const TwoBodyChannelSet& c, double R);

  /// Throws std::invalid_argument if the flags do not fit the mode.
  void validate() const;
  /// Basis indices (2*i + m) of the channels that survive elimination.
  std::vector<int> active_states() const;
  /// Largest sqrt(2) R/|a_i| over finite channels; 0 in asymptotic mode.
  double max_dimer_slope() const;
  /// 10 + 2 sqrt(2) R / min |a_i| in finite mode, 10 otherwise.
  double default_kappa_max() const;
};

/// M(s) for s on the real axis, or H(kappa) for s = i kappa.
/// Rows/columns follow active_states(). Throws for off-axis s, s = 0 or
/// kappa <= 0.
Eigen::MatrixXd channel_matrix(std::complex<double> s, const ChannelMatrixSpec& spec);

/// channel_matrix divided by a positive, x-dependent factor that keeps entries
/// O(1): cosh(kappa pi/2) (1 + max_dimer_slope) on the imaginary axis and
/// (1 + max_dimer_slope) on the real axis. Same roots, same signs.
Eigen::MatrixXd scaled_channel_matrix(Axis axis, double x, const ChannelMatrixSpec& spec);

struct SpinProfile {
  std::array<double, 6> basis_weights{};  // |c_(i,m)|^2
  double w_111 = 0.0;    // no atom in |2>
  double w_mixed = 0.0;  // one or two atoms in |2>
  double w_222 = 0.0;    // all atoms in |2>
};

struct ChannelRoot {
  Axis axis = Axis::imaginary;
  double value = 0.0;  // s on the real axis, kappa = |s| on the imaginary axis
  int multiplicity = 1;
  std::vector<Vec6> null_vectors;  // amplitudes over the six (i,m) states
  double residual = 0.0;           // max |scaled eigenvalue| at the root
  std::optional<SpinProfile> spin_profile;
};

struct RootSearchOptions {
  int grid_points = 2000;
  double epsilon = 1e-8;
  double merge_tol = 1e-8;
  double refine_tol = 1e-10;
};

struct RootList {
  std::vector<ChannelRoot> roots;
  std::vector<std::string> warnings;
};

/// Roots s = i kappa with kappa in (epsilon, kappa_max], descending kappa.
RootList find_roots_imaginary(const ChannelMatrixSpec& spec,
                              std::optional<double> kappa_max = std::nullopt,
                              const RootSearchOptions& opts = {});

/// Real roots in (0, s_max], ascending. Requires s_max >= 2.
RootList find_roots_real(const ChannelMatrixSpec& spec, double s_max,
                         const RootSearchOptions& opts = {});

/// Weights of the root's null space over the three-body spin configurations.
SpinProfile classify_root(const ChannelRoot& root, const ThreeBodySpinBasis& basis);

/// Imaginary roots first (descending kappa), then real roots (ascending s).
void sort_roots(std::vector<ChannelRoot>& roots);

// --- sweeps -----------------------------------------------------------------

struct SweepRow {
  double theta = 0.0;  // NaN when the channel set carries no mixing angle
  std::optional<double> R;
  Mode mode = Mode::asymptotic;
  std::vector<ChannelRoot> roots;
  /// Curve labels per root; one label per unit of multiplicity.
  std::vector<std::vector<int>> curves;
  std::vector<std::string> warnings;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::array<ScatteringLength, 3> lengths{ScatteringLength::closed(),
                                          ScatteringLength::closed(),
                                          ScatteringLength::closed()};
};

struct SweepOptions {
  bool include_real = false;
  double s_max = 6.0;
  std::optional<double> kappa_max;
  unsigned threads = 0;  // 0: SPINOR_EFIMOV_THREADS, then hardware
  bool classify = true;
  RootSearchOptions search;
};

/// theta on [0, pi/2], ascending. lengths are held fixed across the sweep.
SweepTable theta_sweep(const std::vector<double>& thetas,
                       const std::array<ScatteringLength, 3>& lengths, Mode mode,
                       double R, const SweepOptions& opts = {});

/// Finite-mode sweep over hyperradii for a fixed channel set.
SweepTable r_sweep(const TwoBodyChannelSet& channels, const std::vector<double>& radii,
                   const SweepOptions& opts = {});

/// Assign continuity labels: nearest-value matching between consecutive rows,
/// per axis, with multiplicities expanded.
void label_curves(SweepTable& table);

/// Largest |delta value| between consecutive rows along any labeled curve.
double max_curve_jump(const SweepTable& table, Axis axis = Axis::imaginary);

struct Plateau {
  int curve = -1;
  double value = 0.0;
  double R = 0.0;
  double flatness = 0.0;  // |d kappa / d ln R| at the stationary point
  bool accepted = false;
};

struct PlateauResult {
  bool found = false;
  std::string reason;
  std::vector<Plateau> plateaus;  // accepted ones, descending value

  std::vector<Plateau> candidates;  // every curve spanning the window
};

/// Stationary kappa(ln R) per imaginary curve within [10 |a_alpha|, |a_beta|/10].
PlateauResult plateau_extract(const SweepTable& r_table, double a_alpha, double a_beta);

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);
/// n evenly spaced points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, int n);

/// Worker count: requested, else SPINOR_EFIMOV_THREADS, else hardware (0 = auto).
unsigned worker_count(unsigned requested = 0);

}  // namespace spinor_efimov
