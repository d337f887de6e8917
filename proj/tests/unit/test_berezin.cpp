#include <gtest/gtest.h>

#include <cmath>

#include "berezin/berezin.hpp"
#include "berezin/block_matrix.hpp"
#include "berezin/error.hpp"
#include "berezin/random.hpp"

using namespace berezin;

namespace {

CMatrix diag2(Complex a, Complex b) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

const RkhsModel& hardy400() {
  static const RkhsModel h = RkhsModel::hardy();
  return h;
}

}  // namespace

TEST(Symbol, Examples) {
  const CMatrix mz = hardy_operator(HardyKind::Mz, 400);
  EXPECT_NEAR(std::abs(berezin_symbol(mz, hardy400(), hardy_point(0.5)) - 0.5), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(berezin_symbol(CMatrix::Identity(400, 400), hardy400(), hardy_point({0.3, 0.7})) - 1.0), 0.0,
              1e-12);
  EXPECT_EQ(berezin_symbol(diag2(2, 5), RkhsModel::finite_standard(2), finite_point(1)), Complex(5.0));
  EXPECT_THROW(berezin_symbol(CMatrix::Identity(3, 3), RkhsModel::finite_standard(2), finite_point(0)), Error);
}

TEST(BerezinNumber, Examples) {
  const RkhsModel f2 = RkhsModel::finite_standard(2);
  EXPECT_EQ(berezin_number(CMatrix::Zero(2, 2), f2).value, 0.0);
  const BerezinEstimate e = berezin_number(diag2(1, 0), f2);
  EXPECT_EQ(e.value, 1.0);
  EXPECT_TRUE(e.exact);
  ASSERT_EQ(e.witness.coords.size(), 1u);
  EXPECT_EQ(std::get<std::size_t>(e.witness.coords[0]), 0u);

  const BerezinEstimate pz = berezin_number(hardy_operator(HardyKind::PMonomial, 400, 1), hardy400());
  EXPECT_NEAR(pz.value, 0.25, 1e-3);
  EXPECT_FALSE(pz.exact);
}

TEST(BerezinNumber, MzApproachesOne) {
  const BerezinEstimate e = berezin_number(hardy_operator(HardyKind::Mz, 400), hardy400());
  EXPECT_GE(e.value, 0.99);
  EXPECT_LE(e.value, 1.0);
  EXPECT_FALSE(e.exact);
  // the reported value is attained at the witness
  EXPECT_NEAR(std::abs(berezin_symbol(hardy_operator(HardyKind::Mz, 400), hardy400(), e.witness)), e.value, 1e-12);
}

TEST(BerezinNorm, HardyProjections) {
  EXPECT_NEAR(berezin_norm(hardy_operator(HardyKind::PConst, 400), hardy400()).value, 1.0, 1e-3);
  EXPECT_NEAR(berezin_norm(hardy_operator(HardyKind::PMonomial, 400, 1), hardy400()).value, 0.25, 1e-3);
  EXPECT_NEAR(berezin_norm(hardy_operator(HardyKind::PMonomial, 400, 2), hardy400()).value, 4.0 / 27.0, 1e-3);
  EXPECT_NEAR(berezin_norm(hardy_operator(HardyKind::PMonomial, 400, 3), hardy400()).value, 27.0 / 256.0, 1e-3);
}

TEST(BerezinNorm, DiagonalProjectionPair) {
  const Eigen::Index n = 400;
  const CMatrix p = assemble_block(BlockMatrix::diagonal(
      {hardy_operator(HardyKind::PConst, n), hardy_operator(HardyKind::PMonomial, n, 1)}));
  const RkhsModel ds = RkhsModel::direct_sum({hardy400(), hardy400()});
  const BerezinEstimate e = berezin_norm(p, ds);
  EXPECT_NEAR(e.value, 0.536, 2e-3);
  // closed form 4 - 2 sqrt(3), attained at |lambda_2|^2 = 2 - sqrt(3)
  EXPECT_NEAR(e.value, 4.0 - 2.0 * std::sqrt(3.0), 1e-4);
}

TEST(BerezinNorm, PairWitnessReevaluates) {
  Rng rng(21);
  const RkhsModel h = RkhsModel::hardy(40, 0.95);
  const CMatrix a = random_matrix(rng, Ensemble::ComplexGaussian, 40, 40);
  GridSpec g;
  g.radii = 8;
  g.angles = 16;
  const BerezinEstimate e = berezin_norm(a, h, g);
  ASSERT_TRUE(e.witness_mu.has_value());
  EXPECT_NEAR(std::abs(berezin_pair(a, h, e.witness, h, *e.witness_mu)), e.value, 1e-12);
}

TEST(BerezinInf, Examples) {
  const RkhsModel f2 = RkhsModel::finite_standard(2);
  EXPECT_EQ(berezin_inf_c(CMatrix::Identity(2, 2), f2).value, 1.0);
  EXPECT_EQ(berezin_inf_c(diag2(0, 0.25), f2).value, 0.0);
  CMatrix m(2, 2);
  m << 2.0, 2.0, 2.0, 1.0;
  EXPECT_EQ(berezin_inf_c(m, f2).value, 1.0);
}

TEST(FiniteStandard, ExactFormulas) {
  Rng rng(23);
  for (Ensemble e : {Ensemble::ComplexGaussian, Ensemble::PSD, Ensemble::Nilpotent, Ensemble::Unitary}) {
    for (int k = 0; k < 20; ++k) {
      const Eigen::Index n = 1 + k % 6;
      const RkhsModel f = RkhsModel::finite_standard(n);
      const CMatrix a = random_matrix(rng, e, n, n);
      const RVector d = a.diagonal().cwiseAbs();
      EXPECT_EQ(berezin_number(a, f).value, d.maxCoeff());
      EXPECT_EQ(berezin_norm(a, f).value, a.cwiseAbs().maxCoeff());
      EXPECT_EQ(berezin_inf_c(a, f).value, d.minCoeff());
      EXPECT_TRUE(berezin_number(a, f).exact);
    }
  }
}

TEST(Chain, BerLeBerNormLeNormAndW) {
  Rng rng(29);
  const RkhsModel h = RkhsModel::hardy(12, 0.9);
  GridSpec g;
  g.radii = 8;
  g.angles = 16;
  for (Ensemble e : {Ensemble::ComplexGaussian, Ensemble::PSD, Ensemble::Nilpotent, Ensemble::Unitary}) {
    for (int k = 0; k < 10; ++k) {
      const Eigen::Index n = 1 + k % 6;
      const CMatrix a = random_matrix(rng, e, n, n);
      for (const RkhsModel& m : {RkhsModel::finite_standard(n),
                                 RkhsModel::finite_general({random_vector(rng, n), random_vector(rng, n)})}) {
        const double ber = berezin_number(a, m).value;
        const double bn = berezin_norm(a, m).value;
        EXPECT_LE(ber, bn + 1e-8);
        EXPECT_LE(bn, op_norm(a) + 1e-8);
        EXPECT_LE(ber, numerical_radius(a) + 1e-8);
      }
      const CMatrix ah = random_matrix(rng, e, 12, 12);
      const double ber = berezin_number(ah, h, g).value;
      EXPECT_LE(ber, berezin_norm(ah, h, g).value + 1e-8);
      EXPECT_LE(ber, numerical_radius(ah) + 1e-8);
    }
  }
}

TEST(Positivity, NormEqualsNumberOnFiniteModels) {
  Rng rng(31);
  for (int k = 0; k < 40; ++k) {
    const Eigen::Index n = 1 + k % 6;
    const CMatrix a = random_matrix(rng, Ensemble::PSD, n, n);
    const RkhsModel g = RkhsModel::finite_general({random_vector(rng, n), random_vector(rng, n), random_vector(rng, n)});
    for (const RkhsModel& m : {RkhsModel::finite_standard(n), g}) {
      EXPECT_NEAR(berezin_norm(a, m).value, berezin_number(a, m).value, 1e-8);
    }
  }
}

TEST(Grid, RefiningNeverDecreases) {
  Rng rng(37);
  const RkhsModel h = RkhsModel::hardy(30, 0.95);
  for (int k = 0; k < 5; ++k) {
    const CMatrix a = random_matrix(rng, Ensemble::ComplexGaussian, 30, 30);
    GridSpec coarse;
    coarse.radii = 4;
    coarse.angles = 8;
    coarse.refine = false;
    GridSpec fine = coarse;
    fine.radii = 8;
    fine.angles = 16;
    EXPECT_LE(berezin_number(a, h, coarse).value, berezin_number(a, h, fine).value + 1e-15);
    EXPECT_LE(berezin_norm(a, h, coarse).value, berezin_norm(a, h, fine).value + 1e-15);
    // refinement only moves to better points
    GridSpec refined = fine;
    refined.refine = true;
    EXPECT_LE(berezin_number(a, h, fine).value, berezin_number(a, h, refined).value + 1e-15);
  }
}

TEST(Grid, DeterministicWitness) {
  Rng rng(41);
  const RkhsModel h = RkhsModel::hardy(20, 0.9);
  const CMatrix a = random_matrix(rng, Ensemble::ComplexGaussian, 20, 20);
  const BerezinEstimate x = berezin_number(a, h);
  const BerezinEstimate y = berezin_number(a, h);
  EXPECT_EQ(x.value, y.value);
  EXPECT_EQ(describe_point(x.witness), describe_point(y.witness));
}

TEST(BerezinNorm, CrossModel) {
  const RkhsModel f2 = RkhsModel::finite_standard(2);
  const RkhsModel f3 = RkhsModel::finite_standard(3);
  CMatrix a = CMatrix::Zero(3, 2);
  a(2, 1) = Complex(0.0, -4.0);
  EXPECT_EQ(berezin_norm(a, f2, f3).value, 4.0);
  EXPECT_THROW(berezin_norm(a, f3, f2), Error);
}
