// Copyright 2026 The spinor-efimov Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"
#include "spinor_efimov/spin_algebra.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace spinor_efimov;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

Mat3 random_symmetric(std::mt19937_64& rng, double scale = 3.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

TwoBodyChannelSet angle_set(double theta) {
  return channels_from_angle(theta, ScatteringLength::closed(), ScatteringLength::unitary(),
                             ScatteringLength::closed());
}

}  // namespace

TEST_CASE("scattering length kinds") {
  CHECK(ScatteringLength::finite(0.0).is_closed());
  CHECK(ScatteringLength::finite(-2.5).value() == -2.5);
  CHECK(ScatteringLength::unitary().inverse() == 0.0);
  CHECK(std::isinf(ScatteringLength::unitary().value()));
  CHECK(ScatteringLength::finite(4.0).inverse() == 0.25);
  CHECK_THROWS_AS(ScatteringLength::closed().inverse(), std::logic_error);
  CHECK_THROWS_AS(ScatteringLength::finite(INFINITY), std::invalid_argument);
  CHECK(to_string(ScatteringLength::closed()) == "closed");
}

TEST_CASE("scattering matrix is symmetric by construction") {
  const ScatteringMatrix m(1, 2, 3, 4, 5, 6);
  CHECK(m(0, 1) == m(1, 0));
  CHECK(m(1, 2) == 5.0);
  CHECK(max_abs(m.matrix() - m.matrix().transpose()) == 0.0);
  CHECK_FALSE(m.is_toy_form());
  CHECK(ScatteringMatrix::toy(1, 2, 3, 4).is_toy_form());
  CHECK_THROWS_AS(ScatteringMatrix(NAN, 0, 0, 0, 0, 0), std::invalid_argument);
  Mat3 asym = Mat3::Identity();
  asym(0, 1) = 1e-6;
  CHECK_THROWS_AS(ScatteringMatrix::from_matrix(asym), std::invalid_argument);
}

TEST_CASE("toy closed form: degenerate symmetric case") {
  const auto c = toy_closed_form(1.5, 1.5, 0.0, -0.7);
  CHECK(c.lengths[0].value() == 1.5);
  CHECK(c.lengths[1].value() == 1.5);
  CHECK(c.lengths[2].value() == -0.7);
  REQUIRE(c.mixing_angle);
  CHECK(*c.mixing_angle == 0.0);
}

TEST_CASE("toy closed form: pure coupling gives a quarter turn") {
  const double g = 2.0;
  const auto c = toy_closed_form(0.0, 0.0, g, 0.0);
  // a_alpha carries the + branch, paired with cos|11> + sin|12>_S
  CHECK(c.lengths[0].value() == Approx(g));
  CHECK(c.lengths[1].value() == Approx(-g));
  CHECK(c.lengths[2].is_closed());
  CHECK(*c.mixing_angle == Approx(pi / 4));
}

TEST_CASE("toy closed form reproduces the assembled matrix") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int k = 0; k < 200; ++k) {
    const double a11 = u(rng), a22 = u(rng), a12 = u(rng), a33 = u(rng);
    const auto c = toy_closed_form(a11, a22, a12, a33);
    const Vec3 diag(c.lengths[0].value(), c.lengths[1].value(), c.lengths[2].value());
    const Mat3 rebuilt = c.vectors * diag.asDiagonal() * c.vectors.transpose();
    CHECK(max_abs(rebuilt - ScatteringMatrix::toy(a11, a22, a12, a33).matrix()) < 1e-12);
    CHECK(c.orthogonality_defect() < 1e-15);
  }
}

TEST_CASE("toy closed form against Jacobi over random toy matrices") {
  std::mt19937_64 rng(20160401);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int k = 0; k < 1000; ++k) {
    const double a11 = u(rng), a22 = u(rng), a12 = u(rng), a33 = u(rng);
    const auto closed = toy_closed_form(a11, a22, a12, a33);
    const auto jac = jacobi_eigen(ScatteringMatrix::toy(a11, a22, a12, a33).matrix());
    for (int i = 0; i < 3; ++i) {
      const Vec3 v = closed.vectors.col(i);
      const double a = closed.lengths[i].value();
      // nearest Jacobi eigenpair
      int best = 0;
      for (int j = 1; j < 3; ++j)
        if (std::abs(jac.values(j) - a) < std::abs(jac.values(best) - a)) best = j;
      CHECK(std::abs(jac.values(best) - a) <= 1e-10 * std::max(1.0, std::abs(a)));
      CHECK(std::abs(v.dot(jac.vectors.col(best))) > 1 - 1e-10);
    }
  }
}

TEST_CASE("Jacobi against Eigen on general symmetric matrices") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const Mat3 m = random_symmetric(rng);
    const auto jac = jacobi_eigen(m);
    Eigen::SelfAdjointEigenSolver<Mat3> ref(m);
    Vec3 sorted = jac.values;
    std::sort(sorted.data(), sorted.data() + 3);
    CHECK(max_abs(sorted - ref.eigenvalues()) < 1e-12);
    CHECK(max_abs(jac.vectors.transpose() * jac.vectors - Mat3::Identity()) < 1e-12);
  }
  const auto zero = jacobi_eigen(Mat3::Zero());
  CHECK(zero.values.isZero());
}

TEST_CASE("eigenchannels: identity-scaled matrix") {
  const auto c = eigenchannels(ScatteringMatrix(2.5, 0, 0, 2.5, 0, 2.5));
  for (int i = 0; i < 3; ++i) CHECK(c.lengths[i].value() == 2.5);
  CHECK(max_abs(c.vectors.cwiseAbs() - Mat3::Identity()) < 1e-15);
  REQUIRE(c.mixing_angle);
  CHECK(*c.mixing_angle == 0.0);
}

TEST_CASE("eigenchannels match the closed form on toy matrices") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int k = 0; k < 200; ++k) {
    const double a11 = u(rng), a22 = u(rng), a12 = u(rng), a33 = 10 + u(rng);
    const auto num = eigenchannels(ScatteringMatrix::toy(a11, a22, a12, a33));
    const auto ref = toy_closed_form(a11, a22, a12, a33);
    for (int i = 0; i < 3; ++i) {
      CHECK(num.lengths[i].value() == Approx(ref.lengths[i].value()).epsilon(1e-10));
      CHECK(std::abs(num.vectors.col(i).dot(ref.vectors.col(i))) > 1 - 1e-10);
    }
    REQUIRE(num.mixing_angle);
    CHECK(*num.mixing_angle == Approx(*ref.mixing_angle).epsilon(1e-9));
  }
}

TEST_CASE("eigenchannels diagonalize general matrices") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const Mat3 m = random_symmetric(rng);
    const auto c = eigenchannels(ScatteringMatrix::from_matrix(m));
    const Mat3 d = c.vectors.transpose() * m * c.vectors;
    Mat3 off = d;
    off.diagonal().setZero();
    CHECK(max_abs(off) < 1e-12 * std::max(1.0, m.norm()));
    CHECK(c.orthogonality_defect() < 1e-12);
    CHECK_FALSE(c.mixing_angle);
  }
}

TEST_CASE("channels from angle: endpoint eigenvectors") {
  const auto zero = angle_set(0.0);
  CHECK(max_abs(zero.vector(Channel::beta) - Vec3(0, -1, 0)) < 1e-15);
  const auto half = angle_set(pi / 2);
  CHECK(max_abs(half.vector(Channel::beta) - Vec3(1, 0, 0)) < 1e-15);
  for (double t = 0; t <= pi / 2; t += 0.01) CHECK(angle_set(t).orthogonality_defect() < 1e-15);
  CHECK_THROWS_AS(angle_set(2.0), std::domain_error);
  CHECK_THROWS_AS(angle_set(-0.1), std::domain_error);
}

TEST_CASE("pair basis embedding columns are orthonormal") {
  for (double t : {0.0, 0.3, pi / 4, 1.2, pi / 2}) {
    const auto e = three_body_basis(angle_set(t)).embedding;
    CHECK(max_abs(e.transpose() * e - Mat6::Identity()) < 1e-14);
  }
  CHECK(ThreeBodySpinBasis::label(basis_index(1, 0)) == "beta,1");
  CHECK(level_two_count(product_index(1, 0, 1)) == 2);
}

TEST_CASE("exchange overlap equals the brute-force relabeling oracle") {
  std::mt19937_64 rng(9);
  for (double t : {0.0, 0.1, pi / 6, pi / 4, 1.0, pi / 2}) {
    const auto c = angle_set(t);
    CHECK(max_abs(exchange_overlap(c).matrix - oracle::brute_force_overlap(c.vectors)) < 1e-14);
  }
  for (int k = 0; k < 50; ++k) {
    const auto c = eigenchannels(ScatteringMatrix::from_matrix(random_symmetric(rng)));
    CHECK(max_abs(exchange_overlap(c).matrix - oracle::brute_force_overlap(c.vectors)) < 1e-14);
  }
}

TEST_CASE("exchange overlap: resonant-channel blocks at the endpoints") {
  const int b1 = basis_index(1, 0), b2 = basis_index(1, 1);
  const auto o_half = exchange_overlap(angle_set(pi / 2));
  CHECK(o_half(b1, b1) == Approx(2.0));
  CHECK(std::abs(o_half(b2, b2)) < 1e-15);
  CHECK(std::abs(o_half(b1, b2)) < 1e-15);
  const auto o_zero = exchange_overlap(angle_set(0.0));
  CHECK(o_zero(b1, b1) == Approx(1.0));
  CHECK(o_zero(b2, b2) == Approx(1.0));
  CHECK(std::abs(o_zero(b1, b2)) < 1e-15);
}

TEST_CASE("exchange overlap: single-level reduction") {
  // both levels identified: every pair state is |11> and only spectator 1 survives
  TwoBodyChannelSet c = angle_set(pi / 2);
  const auto o = exchange_overlap(c);
  CHECK(o(basis_index(1, 0), basis_index(1, 0)) == 2.0);
  CHECK(oracle::brute_force_overlap(c.vectors)(basis_index(1, 0), basis_index(1, 0)) ==
        Approx(2.0));
}

TEST_CASE("exchange overlap properties") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 100; ++k) {
    const auto c = eigenchannels(ScatteringMatrix::from_matrix(random_symmetric(rng)));
    const auto o = exchange_overlap(c);
    CHECK(o.asymmetry() < 1e-12);
    CHECK(o.matrix.maxCoeff() <= 2.0 + 1e-12);
    CHECK(o.matrix.minCoeff() >= -2.0 - 1e-12);
    for (int f = 0; f < 3; ++f) {
      // flipping |sigma_f> flips the sign of rows and columns 2f, 2f+1
      Mat6 s = Mat6::Identity();
      s(2 * f, 2 * f) = s(2 * f + 1, 2 * f + 1) = -1;
      CHECK(max_abs(exchange_overlap(c.with_flipped_sign(f)).matrix - s * o.matrix * s) < 1e-14);
    }
  }
}

TEST_CASE("exchange overlap is continuous in the mixing angle") {
  double worst = 0.0;
  for (double t = 0.0; t + 1e-4 <= pi / 2; t += 0.01)
    worst = std::max(worst, max_abs(exchange_overlap(angle_set(t + 1e-4)).matrix -
                                    exchange_overlap(angle_set(t)).matrix));
  CHECK(worst < 1e-3);
}

TEST_CASE("one-body rotation") {
  const ScatteringMatrix m(1.0, 0.2, -0.3, 2.0, 0.4, 3.0);
  CHECK(max_abs(one_body_rotation(0.0, m).matrix() - m.matrix()) < 1e-15);
  const auto q = one_body_rotation(pi / 2, m);
  CHECK(q(0, 0) == Approx(m(2, 2)));
  CHECK(q(2, 2) == Approx(m(0, 0)));
  CHECK(q(1, 1) == Approx(m(1, 1)));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> phi(0, 2 * pi);
  for (int k = 0; k < 100; ++k) {
    const Mat3 w = pair_rotation(phi(rng));
    CHECK(max_abs(w.transpose() * w - Mat3::Identity()) < 1e-14);
    const Mat3 r = one_body_rotation(phi(rng), ScatteringMatrix::from_matrix(random_symmetric(rng))).matrix();
    CHECK(max_abs(r - r.transpose()) < 1e-14);
  }
}

TEST_CASE("one-body rotation preserves the spectrum of A") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> phi(0, 2 * pi);
  for (int k = 0; k < 50; ++k) {
    const Mat3 m = random_symmetric(rng);
    Eigen::SelfAdjointEigenSolver<Mat3> a(m);
    Eigen::SelfAdjointEigenSolver<Mat3> b(
        one_body_rotation(phi(rng), ScatteringMatrix::from_matrix(m)).matrix());
    CHECK(max_abs(a.eigenvalues() - b.eigenvalues()) < 1e-12);
  }
}
