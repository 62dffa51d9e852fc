// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spin_algebra.hpp
 * @brief Two-level pair and three-body spin bases for the zero-range model.
 *
 * Pair basis order is fixed as (|11>, |12>_S, |22>), with
 * |12>_S = (|12> + |21>)/sqrt(2). Three-body states are (pair channel of
 * particles 1,2) x (spectator level of particle 3); the other two Faddeev
 * labelings are generated by cyclic permutation and never stored.
 *
 * All lengths are dimensionless in one fixed unit.
 */

#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string>

namespace spinor_efimov {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec8 = Eigen::Matrix<double, 8, 1>;

/// Index of a pair eigenchannel.
enum class Channel : int { alpha = 0, beta = 1, gamma = 2 };

std::string to_string(Channel c);

/// Index into the six-state (channel, spectator) basis: 2*channel + spectator,
/// spectator 0 meaning level |1> and 1 meaning level |2>.
constexpr int basis_index(int channel, int spectator) noexcept {
  return 2 * channel + spectator;
}

/// Scattering length of one eigenchannel with explicit resonance flags.
class ScatteringLength {
 public:
  enum class Kind { finite, unitary, closed };

  /// Zero maps to closed.
  static ScatteringLength finite(double a);
  static ScatteringLength unitary() noexcept { return {Kind::unitary, 0.0}; }
  static ScatteringLength closed() noexcept { return {Kind::closed, 0.0}; }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  bool is_unitary() const noexcept { return kind_ == Kind::unitary; }
  bool is_closed() const noexcept { return kind_ == Kind::closed; }

  /// Numeric value; 0 for closed, +inf for unitary.
  double value() const noexcept;
  /// 1/a; 0 for unitary. Undefined (throws) for closed.
  double inverse() const;

  bool operator==(const ScatteringLength&) const = default;

 private:
  ScatteringLength(Kind k, double v) noexcept : kind_(k), value_(v) {}
  Kind kind_;
  double value_;
};

std::string to_string(const ScatteringLength& a);

/// Real symmetric 3x3 scattering-length matrix in the pair basis.
/// Only the upper triangle is stored, so symmetry holds by construction.
class ScatteringMatrix {
 public:
  ScatteringMatrix(double a11, double a12, double a13, double a22, double a23,
                   double a33);

  /// Takes the upper triangle of m; throws if m is not symmetric to 1e-12.
  static ScatteringMatrix from_matrix(const Mat3& m);
  /// Toy form: A13 = A23 = 0.
  static ScatteringMatrix toy(double a11, double a22, double a12, double a33);

  /// Zero-based entry access.
  double operator()(int i, int j) const noexcept;
  Mat3 matrix() const noexcept;
  bool is_toy_form() const noexcept {
    return (*this)(0, 2) == 0.0 && (*this)(1, 2) == 0.0;
  }

  bool operator==(const ScatteringMatrix&) const = default;

 private:
  std::array<double, 6> upper_;  // a11 a12 a13 a22 a23 a33
};

/// Eigenchannels of the scattering-length matrix.
struct TwoBodyChannelSet {
  std::array<ScatteringLength, 3> lengths;  // alpha, beta, gamma
  Mat3 vectors;                             // column k = |sigma_k>
  std::optional<double> mixing_angle;

  const ScatteringLength& length(Channel c) const {
    return lengths[static_cast<int>(c)];
  }
  Vec3 vector(Channel c) const { return vectors.col(static_cast<int>(c)); }

  /// Max |V^T V - I|.
  double orthogonality_defect() const;

  /// Same subspaces, with column k negated.
  TwoBodyChannelSet with_flipped_sign(int k) const;
  /// Same vectors, with lengths replaced (used by sweeps that hold a_i fixed).
  TwoBodyChannelSet with_lengths(const std::array<ScatteringLength, 3>& a) const;
};

/// Closed-form diagonalization of the toy matrix (A13 = A23 = 0):
///   a_alpha/beta = (A11+A22)/2 +- sqrt(A12^2 + ((A11-A22)/2)^2), a_gamma = A33,
///   tan(theta) = 2 A12 / ((A11-A22) + sqrt(4 A12^2 + (A11-A22)^2)).
/// |sigma_alpha> = cos(theta)|11> + sin(theta)|12>_S belongs to the + root.
/// A degenerate mixed block gives theta = 0.
TwoBodyChannelSet toy_closed_form(double a11, double a22, double a12,
                                  double a33);

/// Cyclic Jacobi on the 3x3 matrix, followed by the alpha/beta/gamma labeling
/// described in README (gamma carries the most |22> weight; alpha is the
/// larger of the remaining eigenvalues).
TwoBodyChannelSet eigenchannels(const ScatteringMatrix& m);

struct JacobiResult {
  Vec3 values;
  Mat3 vectors;  // columns
  int sweeps = 0;
};
/// Plain cyclic Jacobi. Stops when max |off-diagonal| < 1e-14 * ||M||_F.
JacobiResult jacobi_eigen(const Mat3& m);

/// Eigenvectors from the mixing angle with the lengths held fixed:
///   |sigma_alpha> = cos|11> + sin|12>_S, |sigma_beta> = sin|11> - cos|12>_S,
///   |sigma_gamma> = |22>.
/// Throws std::domain_error for theta outside [0, pi/2].
TwoBodyChannelSet channels_from_angle(double theta, ScatteringLength a_alpha,
                                      ScatteringLength a_beta,
                                      ScatteringLength a_gamma);

/// 3x3 matrix of u(phi) x u(phi) on the symmetric pair basis, where
/// u(phi) = [[cos, -sin], [sin, cos]] acts on levels {|1>, |2>}.
Mat3 pair_rotation(double phi);

/// Congruence W A W^T under the one-body rotation u(phi) applied to both atoms.
ScatteringMatrix one_body_rotation(double phi, const ScatteringMatrix& m);

// --- three-body ---------------------------------------------------------

/// Product state index m1*4 + m2*2 + m3 with levels 0 -> |1>, 1 -> |2>.
constexpr int product_index(int m1, int m2, int m3) noexcept {
  return m1 * 4 + m2 * 2 + m3;
}

/// Two-particle symmetric state |sigma> as a 4-vector over |m1 m2>.
Eigen::Vector4d pair_state(const Vec3& sigma);

/// Pair state on particles (p, q) with particle r in level `spectator`,
/// expanded over the 8 product states.
Vec8 embed(const Vec3& sigma, int spectator, int p, int q, int r);

struct ThreeBodySpinBasis {
  Eigen::Matrix<double, 8, 6> embedding;  // (1,2)-pair labeling

  static std::string label(int index);
};

ThreeBodySpinBasis three_body_basis(const TwoBodyChannelSet& c);

/// Spin-exchange overlap between Faddeev components:
///   O[(i,m),(j,m')] = <(i,m)_(12)3 | (j,m')_(23)1> + <(i,m)_(12)3 | (j,m')_(31)2>.
struct ExchangeOverlap {
  Mat6 matrix;

  double operator()(int row, int col) const { return matrix(row, col); }
  double asymmetry() const { return (matrix - matrix.transpose()).cwiseAbs().maxCoeff(); }
};

ExchangeOverlap exchange_overlap(const TwoBodyChannelSet& c);

/// Number of atoms in level |2> for product index k.
int level_two_count(int product) noexcept;

}  // namespace spinor_efimov
