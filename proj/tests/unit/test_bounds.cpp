#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "berezin/bounds.hpp"
#include "berezin/error.hpp"

using namespace berezin;

namespace {

CMatrix E(Eigen::Index i, Eigen::Index j, Eigen::Index n = 2) {
  CMatrix m = CMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

CMatrix m2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

CMatrix Z(Eigen::Index n = 2) { return CMatrix::Zero(n, n); }
CMatrix I(Eigen::Index n = 2) { return CMatrix::Identity(n, n); }

const RkhsModel& fs2() {
  static const RkhsModel m = RkhsModel::finite_standard(2);
  return m;
}

const RkhsModel& ds2() {
  static const RkhsModel m = RkhsModel::direct_sum({fs2(), fs2()});
  return m;
}

BoundInput two(const CMatrix& a, const CMatrix& b, const CMatrix& c, const CMatrix& d) {
  return BoundInput::from_blocks(BlockMatrix::two_by_two(a, b, c, d));
}

double rhs(std::string_view id, const BoundInput& in, const RkhsModel& m, BoundParams p = {}) {
  return bound_rhs(id, in, m, p);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::BadSpec;
}

// first worked instance: ber <= 1.5 from the 2x2 closed form, 2 from the norm baseline
BoundInput mixed_instance() { return two(E(0, 0), E(0, 1), E(0, 1), E(0, 0)); }
// second: off-diagonal only
BoundInput offdiag_instance() { return two(Z(), m2(1, 1, 0, 0), m2(1, 0, 1, 0), Z()); }

BoundInput jordan3() {
  CMatrix j = CMatrix::Zero(3, 3);
  j(0, 1) = 1.0;
  j(1, 2) = 1.0;
  return BoundInput::single(j);
}

}  // namespace

TEST(Th4, Examples) {
  BoundParams p;
  p.t = 0.5;
  EXPECT_NEAR(rhs("th4", mixed_instance(), ds2(), p), 1.5, 1e-12);
  EXPECT_NEAR(rhs("co1", mixed_instance(), ds2(), p), 1.5, 1e-12);
  EXPECT_NEAR(rhs("co2", mixed_instance(), ds2(), p), 1.5, 1e-12);
  EXPECT_EQ(rhs("th4", two(Z(), Z(), Z(), Z()), ds2()), 0.0);

  const RkhsModel f = RkhsModel::finite_standard(2);
  const RkhsModel ds3 = RkhsModel::direct_sum({f, f, f});
  const BoundInput diag = BoundInput::from_blocks(BlockMatrix::diagonal({E(0, 0), 3.0 * E(1, 1), m2(0, 5, 0, -2)}));
  EXPECT_NEAR(rhs("th4", diag, ds3), 3.0, 1e-12);
}

TEST(Th4, PowerPairIsDefault) {
  BoundParams p;
  p.t = 0.3;
  const BoundInput in = two(m2(1, 2, 0, 1), m2(0, 1, 3, 0), m2(2, 0, 1, 1), m2(1, 0, 0, 4));
  EXPECT_EQ(rhs("th4", in, ds2(), p), rhs("co1", in, ds2(), p));
  p.fg = shifted_root_pair();
  EXPECT_EQ(rhs("th4", in, ds2(), p), block_bound(in.blocks, shifted_root_pair(), ds2()));
}

TEST(Th4, BadFunctionPair) {
  BoundParams p;
  p.fg = SpectralPair{[](double t) { return t; }, [](double t) { return t; }, "id,id"};
  // f g = id holds at 0 and 1; the off-diagonal spectra must reach other points
  const BoundInput in = two(I(), m2(2, 0, 0, 3), I(), I());
  EXPECT_EQ(code_of([&] { rhs("th4", in, ds2(), p); }), ErrorCode::BadFunctionPair);
}

TEST(Co5, Examples) {
  EXPECT_NEAR(rhs("co5", mixed_instance(), ds2()), 1.5, 1e-12);
  EXPECT_NEAR(rhs("co5", offdiag_instance(), ds2()), 1.0, 1e-12);
  EXPECT_EQ(rhs("co5", two(Z(), Z(), Z(), Z()), ds2()), 0.0);
  const RkhsModel ds3 = RkhsModel::direct_sum({fs2(), fs2(), fs2()});
  const BoundInput three = BoundInput::from_blocks(BlockMatrix::diagonal({I(), I(), I()}));
  EXPECT_EQ(code_of([&] { rhs("co5", three, ds3); }), ErrorCode::NotTwoByTwo);
}

TEST(Eqn12, Examples) {
  EXPECT_NEAR(rhs("eqn12", mixed_instance(), ds2()), 2.0, 1e-12);
  EXPECT_NEAR(rhs("eqn12", two(2.0 * E(0, 0), Z(), Z(), E(1, 1)), ds2()), 2.0, 1e-12);
  // b1 = b2 = 1 and ||A12|| + ||A21|| = 2 give (2 + sqrt(4)) / 2
  EXPECT_NEAR(rhs("eqn12", two(I(), I(), I(), I()), ds2()), 2.0, 1e-12);
}

TEST(R1E2, Examples) {
  EXPECT_NEAR(rhs("R1E2", offdiag_instance(), ds2()), std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(rhs("R1E2", two(E(0, 0), Z(), Z(), 3.0 * E(1, 1)), ds2()), 3.0, 1e-12);
  EXPECT_NEAR(rhs("R1E2", two(Z(), I(), I(), Z()), ds2()), 1.0, 1e-9);
}

TEST(Th8, Examples) {
  EXPECT_EQ(rhs("th8", two(Z(), Z(), Z(), Z()), ds2()), 0.0);
  const CMatrix a = m2(1, 2, -3, 0.5);
  const BoundInput one = BoundInput::from_blocks(BlockMatrix({{a}}));
  EXPECT_NEAR(rhs("th8", one, fs2()), 3.0, 1e-12);
  EXPECT_NEAR(rhs("th8", one, fs2()), berezin_norm(a, fs2()).value, 1e-12);
}

TEST(Eqn14, FlipsAgainstNormBaseline) {
  const BoundInput a = BoundInput::from_blocks(BlockMatrix::off_diagonal(m2(1, 1, 0, 0), m2(1, 0, 1, 0)));
  EXPECT_NEAR(rhs("eqn14", a, ds2()), 1.0, 1e-12);
  EXPECT_NEAR(rhs("lm7ii", a, ds2()), std::sqrt(2.0), 1e-12);
  const BoundInput b = BoundInput::from_blocks(BlockMatrix::off_diagonal(E(0, 0), 2.0 * E(1, 1)));
  EXPECT_NEAR(rhs("eqn14", b, ds2()), 2.0, 1e-12);
  EXPECT_NEAR(rhs("lm7ii", b, ds2()), 1.5, 1e-12);
  const BoundInput z = BoundInput::from_blocks(BlockMatrix::off_diagonal(Z(), Z()));
  EXPECT_EQ(rhs("eqn14", z, ds2()), 0.0);
  EXPECT_EQ(rhs("lm7ii", z, ds2()), 0.0);
}

TEST(Th5, Examples) {
  BoundParams p;
  p.alpha = 2.0;
  const BoundInput id = BoundInput::from_blocks(BlockMatrix::off_diagonal(I(), I()));
  // (1/2)||2I||_ber + (|1 - alpha| - 1)/|alpha| * ber(I) * ... reduces to 1 at alpha = 2
  EXPECT_NEAR(rhs("th5", id, ds2(), p), 1.0, 1e-12);
  EXPECT_NEAR(rhs("inq2", id, ds2(), p), 1.0, 1e-12);
  const BoundInput z = BoundInput::from_blocks(BlockMatrix::off_diagonal(Z(), Z()));
  EXPECT_EQ(rhs("th5", z, ds2(), p), 0.0);

  const BoundInput nil = BoundInput::from_blocks(BlockMatrix::off_diagonal(E(0, 1), E(0, 1)));
  EXPECT_NEAR(rhs("inq3", nil, ds2()), std::sqrt(0.5), 1e-12);
  EXPECT_LT(rhs("inq3", nil, ds2()), rhs("lm7ii", nil, ds2()));

  p.alpha = 0.0;
  EXPECT_EQ(code_of([&] { rhs("th5", id, ds2(), p); }), ErrorCode::ZeroAlpha);
}

TEST(Th6, Examples) {
  const BoundInput in = two(E(0, 1), E(0, 0), E(0, 0), E(0, 1));
  EXPECT_NEAR(rhs("inq5", in, ds2()), std::sqrt(2.0), 1e-9);
  EXPECT_EQ(rhs("th6", two(Z(), Z(), Z(), Z()), ds2()), 0.0);
  EXPECT_NEAR(rhs("co6", two(Z(), E(0, 0), Z(), Z()), ds2()), std::sqrt(2.0), 1e-12);
  BoundParams p;
  p.alpha = 0.0;
  EXPECT_EQ(code_of([&] { rhs("th6", in, ds2(), p); }), ErrorCode::ZeroAlpha);
}

TEST(Inq6, Examples) {
  EXPECT_EQ(rhs("inq6", two(E(0, 1), E(0, 0), E(0, 0), E(0, 1)), ds2()), 1.5);
  EXPECT_EQ(rhs("inq6", two(Z(), Z(), Z(), Z()), ds2()), 0.0);
  EXPECT_NEAR(rhs("inq6", two(I(), I(), I(), I()), ds2()), 2.0, 1e-12);
}

TEST(Th7, Examples) {
  const CMatrix a = m2(1, 1, 0, 0);
  const CMatrix b = m2(0, 0, 1, 1);
  const BoundInput in = two(a, b, a.adjoint(), b.adjoint());
  EXPECT_NEAR(rhs("th7", in, ds2()), 2.4, 5e-2);
  EXPECT_NEAR(rhs("ee5", in, ds2()), 3.0, 1e-12);
  EXPECT_EQ(rhs("th7", two(Z(), Z(), Z(), Z()), ds2()), 0.0);
  EXPECT_EQ(rhs("ee5", two(Z(), Z(), Z(), Z()), ds2()), 0.0);
  EXPECT_NEAR(rhs("th7", two(I(), Z(), Z(), I()), ds2()), std::sqrt(1.5), 1e-12);
  EXPECT_NEAR(rhs("ee5", two(Z(), Z(), Z(), I()), ds2()), 1.0, 1e-12);
}

TEST(SumsAndProducts, Examples) {
  BoundParams p;
  p.r = 2;
  const BoundInput sum = BoundInput::lists({E(0, 0), E(0, 1)});
  EXPECT_NEAR(std::pow(rhs("cot9ii", sum, fs2(), p), 2), 2.5, 1e-12);
  EXPECT_NEAR(std::pow(rhs("ee1", sum, fs2(), p), 2), std::sqrt(10.0), 1e-12);

  const BoundInput prod = BoundInput::lists({m2(1, 1, 0, 0)}, {m2(0, 1, 0, 0)});
  EXPECT_NEAR(std::pow(rhs("cot10ii", prod, fs2(), p), 2), 1.25, 1e-12);
  EXPECT_NEAR(std::pow(rhs("ee2", prod, fs2(), p), 2), std::sqrt(2.0), 1e-9);

  const BoundInput zeros = BoundInput::lists({Z(), Z()}, {Z(), Z()}, {Z(), Z()});
  for (const char* id : {"th9", "cot9i", "cot9iii", "cot9iv", "cot10i", "cot10ii"}) {
    EXPECT_EQ(rhs(id, zeros, fs2(), p), 0.0) << id;
  }
  // the sum bound pairs each A_i with the identity, so zero data still leaves the identity term
  EXPECT_GT(rhs("cot9ii", zeros, fs2(), p), 0.0);

  const BoundInput ragged = BoundInput::lists({I(), I()}, {I()}, {I(), I()});
  EXPECT_EQ(code_of([&] { rhs("th9", ragged, fs2(), p); }), ErrorCode::ListLengthMismatch);
}

TEST(PsdBaseline, RejectsNonPsd) {
  const BoundInput in = BoundInput::lists({m2(0, 1, 1, 0)}, {I()});
  EXPECT_EQ(code_of([&] { rhs("ee3", in, fs2()); }), ErrorCode::NotPSD);
}

TEST(Ee4, JordanBlock) {
  BoundParams p;
  p.r = 3;
  EXPECT_NEAR(std::pow(rhs("ee4", jordan3(), RkhsModel::finite_standard(3), p), 3), 1.0, 1e-12);
}

TEST(Cubic, Examples) {
  const RkhsModel f3 = RkhsModel::finite_standard(3);
  EXPECT_NEAR(std::pow(rhs("th10cor1", jordan3(), f3), 3), 0.75, 1e-12);
  EXPECT_EQ(rhs("th10cor1", BoundInput::single(Z(3)), f3), 0.0);
  EXPECT_EQ(rhs("th10", BoundInput::single(Z(3)), f3), 0.0);
  EXPECT_NEAR(rhs("th10cor1", BoundInput::single(I(3)), f3), 1.0, 1e-12);
  EXPECT_NEAR(rhs("th10", BoundInput::single(I(3)), f3), 1.0, 1e-9);
}

TEST(Quartic, Examples) {
  for (const char* id : {"th11i", "th11ii", "th11iii", "th11iv"}) {
    EXPECT_EQ(rhs(id, BoundInput::single(Z()), fs2()), 0.0) << id;
  }
  EXPECT_NEAR(rhs("th11iii", BoundInput::single(I()), fs2()), 1.0, 1e-12);
  EXPECT_NEAR(rhs("th11iii", BoundInput::single(E(0, 1)), fs2()), 0.5, 1e-12);
}

TEST(T20, Examples) {
  BoundParams p;
  p.n_power = 2;
  EXPECT_EQ(rhs("T20", BoundInput::single(Z()), fs2(), p), 0.0);
  EXPECT_NEAR(rhs("T20", BoundInput::single(I()), fs2(), p), 1.0, 1e-12);
  EXPECT_NEAR(rhs("T20", BoundInput::single(E(0, 1)), fs2(), p), std::sqrt(0.5), 1e-12);
  p.n_power = 1;
  EXPECT_EQ(code_of([&] { rhs("T20", BoundInput::single(I()), fs2(), p); }), ErrorCode::BadPower);
}

TEST(Catalog, IdsAreStable) {
  const std::vector<std::string> ids{"th4",    "co1",    "co2",     "co5",     "eqn12",  "R1E2",      "th8",
                                     "c28i",   "c28ii",  "eqn14",   "lm7i",    "lm7ii",  "th5",       "inq2",
                                     "inq3",   "co4",    "th6",     "co6",     "inq5",   "inq6",      "th7",
                                     "ee5",    "th9",    "cot9i",   "cot9ii",  "cot9iii", "cot9iv",   "cot10i",
                                     "cot10ii", "cot11i", "cot11ii", "cot11comm", "ee1",  "ee2",       "ee3",
                                     "ee4",    "th10",   "th10cor1", "th11i",  "th11ii", "th11iii",   "th11iv",
                                     "T20"};
  ASSERT_EQ(bound_catalog().size(), ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) EXPECT_EQ(bound_catalog()[i].id, ids[i]);
  EXPECT_EQ(code_of([] { bound_info("th99"); }), ErrorCode::UnknownBound);
  EXPECT_FALSE(is_known_bound("nope"));
}

TEST(Evaluate, VerdictOnExactModel) {
  const BoundReport r = evaluate_bound("co5", mixed_instance(), ds2(), {});
  EXPECT_EQ(r.verdict, Verdict::Holds);
  EXPECT_TRUE(r.lhs.exact);
  EXPECT_NEAR(r.margin, r.rhs - r.lhs.value, 1e-15);
  EXPECT_LE(r.lhs.value, r.rhs);
}
