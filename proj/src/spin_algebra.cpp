// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

#include "spinor_efimov/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace spinor_efimov {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Fix the overall sign of the three labeled eigenvectors to the pattern of
// |sigma_alpha> = (c, s, 0), |sigma_beta> = (s, -c, 0), |sigma_gamma> = (0,0,1).
void canonical_signs(Mat3& v) {
  constexpr double tiny = 1e-14;
  auto flip = [&](int k, bool cond) {
    if (cond) v.col(k) = -v.col(k);
  };
  // alpha: |11> component positive, else |12>_S component positive
  if (std::abs(v(0, 0)) > tiny)
    flip(0, v(0, 0) < 0);
  else if (std::abs(v(1, 0)) > tiny)
    flip(0, v(1, 0) < 0);
  else
    flip(0, v(2, 0) < 0);
  // beta: |12>_S component negative, else |11> component positive
  if (std::abs(v(1, 1)) > tiny)
    flip(1, v(1, 1) > 0);
  else if (std::abs(v(0, 1)) > tiny)
    flip(1, v(0, 1) < 0);
  else
    flip(1, v(2, 1) < 0);
  // gamma: |22> component positive
  if (std::abs(v(2, 2)) > tiny)
    flip(2, v(2, 2) < 0);
  else if (std::abs(v(0, 2)) > tiny)
    flip(2, v(0, 2) < 0);
  else
    flip(2, v(1, 2) < 0);
}

}  // namespace

std::string to_string(Channel c) {
  switch (c) {
    case Channel::alpha: return "alpha";
    case Channel::beta: return "beta";
    case Channel::gamma: return "gamma";
  }
  return "?";
}

// --- ScatteringLength ---------------------------------------------------

ScatteringLength ScatteringLength::finite(double a) {
  if (!std::isfinite(a))
    throw std::invalid_argument("scattering length must be finite; use unitary()");
  if (a == 0.0) return closed();
  return {Kind::finite, a};
}

double ScatteringLength::value() const noexcept {
  switch (kind_) {
    case Kind::finite: return value_;
    case Kind::unitary: return std::numeric_limits<double>::infinity();
    case Kind::closed: return 0.0;
  }
  return 0.0;
}

double ScatteringLength::inverse() const {
  switch (kind_) {
    case Kind::finite: return 1.0 / value_;
    case Kind::unitary: return 0.0;
    case Kind::closed: break;
  }
  throw std::logic_error("inverse of a closed channel scattering length");
}

std::string to_string(const ScatteringLength& a) {
  if (a.is_unitary()) return "unitary";
  if (a.is_closed()) return "closed";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", a.value());
  return buf;
}

// --- ScatteringMatrix ---------------------------------------------------

ScatteringMatrix::ScatteringMatrix(double a11, double a12, double a13,
                                   double a22, double a23, double a33)
    : upper_{a11, a12, a13, a22, a23, a33} {
  for (double x : upper_)
    if (!std::isfinite(x))
      throw std::invalid_argument("scattering matrix entries must be finite");
}

ScatteringMatrix ScatteringMatrix::from_matrix(const Mat3& m) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("scattering matrix must be symmetric");
  return {m(0, 0), m(0, 1), m(0, 2), m(1, 1), m(1, 2), m(2, 2)};
}

ScatteringMatrix ScatteringMatrix::toy(double a11, double a22, double a12,
                                       double a33) {
  return {a11, a12, 0.0, a22, 0.0, a33};
}

double ScatteringMatrix::operator()(int i, int j) const noexcept {
  if (i > j) std::swap(i, j);
  static constexpr int offset[3] = {0, 3, 5};
  return upper_[offset[i] + (j - i)];
}

Mat3 ScatteringMatrix::matrix() const noexcept {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = (*this)(i, j);
  return m;
}

// --- TwoBodyChannelSet ----------------------------------------------------

double TwoBodyChannelSet::orthogonality_defect() const {
  return (vectors.transpose() * vectors - Mat3::Identity()).cwiseAbs().maxCoeff();
}

TwoBodyChannelSet TwoBodyChannelSet::with_flipped_sign(int k) const {
  TwoBodyChannelSet out = *this;
  out.vectors.col(k) = -out.vectors.col(k);
  return out;
}

TwoBodyChannelSet TwoBodyChannelSet::with_lengths(
    const std::array<ScatteringLength, 3>& a) const {
  TwoBodyChannelSet out = *this;
  out.lengths = a;
  return out;
}

// --- diagonalization ------------------------------------------------------

TwoBodyChannelSet toy_closed_form(double a11, double a22, double a12,
                                  double a33) {
  for (double x : {a11, a22, a12, a33})
    if (!std::isfinite(x))
      throw std::invalid_argument("toy_closed_form: inputs must be finite");

  const double mean = 0.5 * (a11 + a22);
  const double d = a11 - a22;
  const double root = std::hypot(a12, 0.5 * d);

  double theta = 0.0;
  if (!(a12 == 0.0 && d == 0.0)) {
    // atan2 keeps the d + sqrt(...) -> 0 limit (a12 = 0, d < 0) at pi/2.
    theta = std::atan2(2.0 * a12, d + std::hypot(2.0 * a12, d));
  }
  const double c = std::cos(theta), s = std::sin(theta);

  TwoBodyChannelSet out{
      {ScatteringLength::finite(mean + root), ScatteringLength::finite(mean - root),
       ScatteringLength::finite(a33)},
      Mat3::Zero(),
      theta};
  out.vectors.col(0) << c, s, 0.0;
  out.vectors.col(1) << s, -c, 0.0;
  out.vectors.col(2) << 0.0, 0.0, 1.0;
  return out;
}

JacobiResult jacobi_eigen(const Mat3& m) {
  Mat3 a = m;
  Mat3 v = Mat3::Identity();
  const double norm = a.norm();
  JacobiResult res;
  if (norm == 0.0) {
    res.values = Vec3::Zero();
    res.vectors = v;
    return res;
  }
  const double tol = 1e-14 * norm;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 3; ++p)
      for (int q = p + 1; q < 3; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off < tol) break;
    res.sweeps = sweep + 1;
    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (int k = 0; k < 3; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  res.values = a.diagonal();
  res.vectors = v;
  return res;
}

TwoBodyChannelSet eigenchannels(const ScatteringMatrix& m) {
  const JacobiResult jac = jacobi_eigen(m.matrix());

  // gamma: the eigenvector with the most |22> weight
  int g = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(jac.vectors(2, k)) > std::abs(jac.vectors(2, g)) + 1e-12) g = k;
  int rest[2], n = 0;
  for (int k = 0; k < 3; ++k)
    if (k != g) rest[n++] = k;

  // alpha: the larger remaining eigenvalue; ties go to the larger |11> weight
  const double scale = std::max(1.0, jac.values.cwiseAbs().maxCoeff());
  int a = rest[0], b = rest[1];
  const double gap = jac.values(a) - jac.values(b);
  if (std::abs(gap) <= 1e-13 * scale) {
    if (std::abs(jac.vectors(0, b)) > std::abs(jac.vectors(0, a))) std::swap(a, b);
  } else if (gap < 0) {
    std::swap(a, b);
  }

  TwoBodyChannelSet out{{ScatteringLength::finite(jac.values(a)),
                         ScatteringLength::finite(jac.values(b)),
                         ScatteringLength::finite(jac.values(g))},
                        Mat3::Zero(),
                        std::nullopt};
  out.vectors.col(0) = jac.vectors.col(a);
  out.vectors.col(1) = jac.vectors.col(b);
  out.vectors.col(2) = jac.vectors.col(g);
  canonical_signs(out.vectors);

  if (m.is_toy_form()) {
    const Vec3 va = out.vectors.col(0);
    out.mixing_angle = std::atan2(va(1), va(0));
  }
  return out;
}

TwoBodyChannelSet channels_from_angle(double theta, ScatteringLength a_alpha,
                                      ScatteringLength a_beta,
                                      ScatteringLength a_gamma) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2))
    throw std::domain_error("mixing angle must lie in [0, pi/2]");
  const double c = std::cos(theta), s = std::sin(theta);
  TwoBodyChannelSet out{{a_alpha, a_beta, a_gamma}, Mat3::Zero(), theta};
  out.vectors.col(0) << c, s, 0.0;
  out.vectors.col(1) << s, -c, 0.0;
  out.vectors.col(2) << 0.0, 0.0, 1.0;
  return out;
}

Mat3 pair_rotation(double phi) {
  Eigen::Matrix2d u;
  u << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  Eigen::Matrix4d uu;  // u x u over |m1 m2>, index m1*2+m2
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) uu(i * 2 + j, k * 2 + l) = u(i, k) * u(j, l);
  Eigen::Matrix<double, 4, 3> basis = Eigen::Matrix<double, 4, 3>::Zero();
  basis(0, 0) = 1.0;
  basis(1, 1) = basis(2, 1) = kInvSqrt2;
  basis(3, 2) = 1.0;
  return basis.transpose() * uu * basis;
}

ScatteringMatrix one_body_rotation(double phi, const ScatteringMatrix& m) {
  const Mat3 w = pair_rotation(phi);
  Mat3 r = w * m.matrix() * w.transpose();
  r = 0.5 * (r + r.transpose());
  return ScatteringMatrix::from_matrix(r);
}

// --- three-body -------------------------------------------------------------

Eigen::Vector4d pair_state(const Vec3& sigma) {
  Eigen::Vector4d v;
  v << sigma(0), kInvSqrt2 * sigma(1), kInvSqrt2 * sigma(1), sigma(2);
  return v;
}

Vec8 embed(const Vec3& sigma, int spectator, int p, int q, int r) {
  const Eigen::Vector4d pair = pair_state(sigma);
  Vec8 out = Vec8::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      int level[3];
      level[p] = a;
      level[q] = b;
      level[r] = spectator;
      out(product_index(level[0], level[1], level[2])) += pair(a * 2 + b);
    }
  }
  return out;
}

std::string ThreeBodySpinBasis::label(int index) {
  static const char* names[] = {"alpha,1", "alpha,2", "beta,1",
                                "beta,2",  "gamma,1", "gamma,2"};
  return names[index];
}

ThreeBodySpinBasis three_body_basis(const TwoBodyChannelSet& c) {
  ThreeBodySpinBasis basis;
  for (int i = 0; i < 3; ++i)
    for (int m = 0; m < 2; ++m)
      basis.embedding.col(basis_index(i, m)) = embed(c.vectors.col(i), m, 0, 1, 2);
  return basis;
}

ExchangeOverlap exchange_overlap(const TwoBodyChannelSet& c) {
  Eigen::Matrix<double, 8, 6> home, cyc23, cyc31;
  for (int i = 0; i < 3; ++i) {
    for (int m = 0; m < 2; ++m) {
      const Vec3 v = c.vectors.col(i);
      home.col(basis_index(i, m)) = embed(v, m, 0, 1, 2);
      cyc23.col(basis_index(i, m)) = embed(v, m, 1, 2, 0);
      cyc31.col(basis_index(i, m)) = embed(v, m, 2, 0, 1);
    }
  }
  ExchangeOverlap out;
  out.matrix = home.transpose() * cyc23 + home.transpose() * cyc31;
  return out;
}

int level_two_count(int product) noexcept {
  return ((product >> 2) & 1) + ((product >> 1) & 1) + (product & 1);
}

}  // namespace spinor_efimov
