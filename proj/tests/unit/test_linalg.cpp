#include <gtest/gtest.h>

#include <cmath>

#include "berezin/error.hpp"
#include "berezin/linalg.hpp"
#include "berezin/random.hpp"

using namespace berezin;

namespace {

CMatrix m2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

double max_abs(const CMatrix& a) { return a.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Adjoint, Examples) {
  EXPECT_EQ(adjoint(identity(3)), identity(3));
  EXPECT_EQ(adjoint(m2(0, 1, 0, 0)), m2(0, 0, 1, 0));
  Rng rng(11);
  const CMatrix a = random_matrix(rng, Ensemble::ComplexGaussian, 5, 5);
  EXPECT_EQ(adjoint(adjoint(a)), a);
  EXPECT_EQ(adjoint(m2(0, {0, 1}, 0, 0))(1, 0), Complex(0, -1));
}

TEST(NumericalRadius, RejectsNonFinite) {
  CMatrix a = identity(2);
  a(0, 1) = std::nan("");
  EXPECT_THROW(numerical_radius(a), Error);
}

TEST(HermEig, Examples) {
  const HermEig d = herm_eig(m2(2, 0, 0, 1));
  EXPECT_NEAR(d.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(d.eigenvalues(1), 2.0, 1e-14);

  const RVector ev = herm_eigenvalues(m2(1, 1, 1, 1));
  EXPECT_NEAR(ev(0), 0.0, 1e-14);
  EXPECT_NEAR(ev(1), 2.0, 1e-14);

  EXPECT_EQ(herm_eigenvalues(CMatrix::Zero(3, 3)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(HermEig, ReconstructsAndIsUnitary) {
  Rng rng(5);
  for (int k = 0; k < 40; ++k) {
    const Eigen::Index n = 1 + k % 8;
    const CMatrix a = hermitian_part(random_matrix(rng, Ensemble::ComplexGaussian, n, n));
    const HermEig d = herm_eig(a);
    const CMatrix& v = d.eigenvectors;
    const CMatrix rec = v * d.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    EXPECT_LE(max_abs(rec - a), 1e-10 * std::max(1.0, a.norm()));
    EXPECT_LE(max_abs(v.adjoint() * v - identity(n)), 1e-10);
    for (Eigen::Index i = 1; i < n; ++i) EXPECT_LE(d.eigenvalues(i - 1), d.eigenvalues(i));
  }
}

TEST(HermEig, RejectsNonHermitian) { EXPECT_THROW(herm_eig(m2(0, 1, 0, 0)), Error); }

TEST(AbsOp, Examples) {
  EXPECT_LE(max_abs(abs_op(m2(0, 1, 0, 0)) - m2(0, 0, 0, 1)), 1e-14);
  // A*A = 2A has eigenvalue 4 on (1,1)/sqrt(2), so |A| = A.
  EXPECT_LE(max_abs(abs_op(m2(1, 1, 1, 1)) - m2(1, 1, 1, 1)), 1e-12);
  CMatrix s(1, 1);
  s(0, 0) = -3.0;
  EXPECT_NEAR(abs_op(s)(0, 0).real(), 3.0, 1e-14);
}

TEST(AbsOp, SquareIsGram) {
  Rng rng(7);
  for (int k = 0; k < 40; ++k) {
    const Eigen::Index r = 1 + k % 5;
    const Eigen::Index c = 1 + (k / 5) % 5;
    const CMatrix a = random_matrix(rng, Ensemble::ComplexGaussian, r, c, k % 3 == 0 ? 10.0 : 1.0);
    const CMatrix p = abs_op(a);
    EXPECT_EQ(p.rows(), c);
    EXPECT_TRUE(is_psd(p));
    EXPECT_LE(max_abs(p * p - a.adjoint() * a), 1e-9 * std::max(1.0, op_norm(a) * op_norm(a)));
  }
}

TEST(SqrtPsd, Examples) {
  EXPECT_LE(max_abs(sqrt_psd(m2(4, 0, 0, 9)) - m2(2, 0, 0, 3)), 1e-14);
  EXPECT_LE(max_abs(sqrt_psd(identity(3)) - identity(3)), 1e-14);
  const CMatrix a = m2(2, 1, 1, 2);
  const CMatrix r = sqrt_psd(a);
  EXPECT_LE(max_abs(r * r - a), 1e-10);
  EXPECT_THROW(sqrt_psd(m2(-1, 0, 0, 1)), Error);
}

TEST(SpectralFn, Examples) {
  Rng rng(3);
  const CMatrix p = random_matrix(rng, Ensemble::PSD, 4, 4);
  EXPECT_LE(max_abs(apply_spectral_fn(p, [](double t) { return t; }) - p), 1e-10);
  CMatrix four(1, 1);
  four(0, 0) = 4.0;
  EXPECT_NEAR(apply_spectral_fn(four, [](double t) { return std::sqrt(t); })(0, 0).real(), 2.0, 1e-14);
  const double t0 = 0.3;
  const CMatrix d = apply_spectral_fn(m2(2, 0, 0, 5), [t0](double t) { return std::pow(t, 2 * t0); });
  EXPECT_NEAR(d(0, 0).real(), std::pow(2.0, 0.6), 1e-12);
  EXPECT_NEAR(d(1, 1).real(), std::pow(5.0, 0.6), 1e-12);
  EXPECT_THROW(apply_spectral_fn(m2(1, 0, 0, 1), [](double) { return std::nan(""); }), Error);
}

TEST(SpectralFn, PowerPairFactorsAbs) {
  Rng rng(9);
  for (int k = 0; k < 30; ++k) {
    const Eigen::Index n = 1 + k % 6;
    const CMatrix a = random_matrix(rng, Ensemble::ComplexGaussian, n, n);
    const CMatrix abs_a = abs_op(a);
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const CMatrix prod = psd_power(abs_a, s) * psd_power(abs_a, 1.0 - s);
      EXPECT_LE(max_abs(prod - abs_a), 1e-9 * std::max(1.0, op_norm(a)));
    }
  }
}

TEST(MatrixPower, Basics) {
  const CMatrix j = m2(0, 1, 0, 0);
  EXPECT_EQ(matrix_power(j, 0), identity(2));
  EXPECT_EQ(matrix_power(j, 2), CMatrix::Zero(2, 2));
  EXPECT_LE(max_abs(matrix_power(m2(1, 1, 0, 1), 5) - m2(1, 5, 0, 1)), 1e-14);
  EXPECT_THROW(matrix_power(j, -1), Error);
}

TEST(OpNorm, Examples) {
  EXPECT_NEAR(op_norm(m2(1, 1, 0, 0)), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(op_norm(identity(4)), 1.0, 1e-14);
  EXPECT_EQ(op_norm(CMatrix::Zero(3, 2)), 0.0);
}

TEST(OpNorm, AdjointInvariant) {
  Rng rng(13);
  for (int k = 0; k < 30; ++k) {
    const CMatrix a = random_matrix(rng, Ensemble::ComplexGaussian, 1 + k % 4, 1 + k % 6);
    EXPECT_NEAR(op_norm(adjoint(a)), op_norm(a), 1e-10 * std::max(1.0, op_norm(a)));
  }
}

TEST(NumericalRadius, Examples) {
  EXPECT_NEAR(numerical_radius(m2(0, 1, 0, 0)), 0.5, 1e-10);
  EXPECT_NEAR(numerical_radius(identity(3)), 1.0, 1e-12);
  EXPECT_NEAR(numerical_radius(m2(1, 1, 1, 1)), 2.0, 1e-10);
  EXPECT_THROW(numerical_radius(CMatrix::Zero(2, 3)), Error);
}

TEST(NumericalRadius, NonnegExamples) {
  EXPECT_NEAR(numerical_radius_entrywise_nonneg(m2(1, 1, 0, 1)), 1.5, 1e-12);
  EXPECT_NEAR(numerical_radius_entrywise_nonneg(m2(3, 0, 0, 1)), 3.0, 1e-12);
  EXPECT_NEAR(numerical_radius_entrywise_nonneg(m2(0, 1, 1, 0)), 1.0, 1e-12);
  EXPECT_THROW(numerical_radius_entrywise_nonneg(m2(0, -1, 1, 0)), Error);
}

TEST(NumericalRadius, BetweenHalfNormAndNorm) {
  Rng rng(17);
  for (Ensemble e : {Ensemble::ComplexGaussian, Ensemble::Nilpotent, Ensemble::Unitary, Ensemble::PSD}) {
    for (int k = 0; k < 25; ++k) {
      const Eigen::Index n = 1 + k % 6;
      const CMatrix a = random_matrix(rng, e, n, n);
      const double w = numerical_radius(a);
      const double nrm = op_norm(a);
      EXPECT_LE(nrm / 2, w + 1e-8);
      EXPECT_LE(w, nrm + 1e-8);
    }
  }
}

TEST(NumericalRadius, AgreesWithNonnegFormula) {
  Rng rng(19);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index n = 1 + k % 6;
    CMatrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) a(i, j) = std::abs(rng.normal());
    }
    EXPECT_NEAR(numerical_radius(a), numerical_radius_entrywise_nonneg(a), 1e-8);
  }
}
