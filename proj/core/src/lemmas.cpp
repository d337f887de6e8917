#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "berezin/error.hpp"
#include "berezin/verify.hpp"

namespace berezin {

namespace {

constexpr double kVectorTol = 1e-12;
constexpr double kOperatorTol = 1e-9;

// Accumulates rhs - lhs samples against a relative tolerance.
struct Tally {
  LemmaReport rep;

  Tally(std::string_view id, double tol) {
    rep.lemma_id = std::string(id);
    rep.tolerance = tol;
    rep.min_slack = std::numeric_limits<double>::infinity();
  }

  void le(double lhs, double rhs) {
    const double slack = rhs - lhs;
    rep.min_slack = std::min(rep.min_slack, slack);
    if (slack < -rep.tolerance * std::max(1.0, std::abs(rhs))) rep.holds = false;
    ++rep.samples;
  }

  void eq(double a, double b) {
    const double gap = std::abs(a - b);
    rep.min_slack = std::min(rep.min_slack, -gap);
    if (gap > rep.tolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)))) rep.holds = false;
    ++rep.samples;
  }
};

Rng stream(const InstanceSpec& spec, std::string_view id) {
  return Rng(stream_seed(spec.seed, std::string("lemma/") + std::string(id) + "/" + spec.label));
}

CVector unit(Rng& rng, Eigen::Index n) {
  CVector v = random_vector(rng, n);
  while (v.norm() == 0.0) v = random_vector(rng, n);
  return v / v.norm();
}

const Complex kAlphas[] = {{1.0, 0.0}, {2.0, 0.0}, {3.0, 4.0}};

LemmaReport lm1(const InstanceSpec& s) {
  Tally t("lm1", kOperatorTol);
  Rng rng = stream(s, "lm1");
  const CMatrix a = random_matrix(rng, Ensemble::PSD, s.dim, s.dim, s.scale);
  const CVector x = unit(rng, s.dim);
  for (int r = 1; r <= 3; ++r) {
    const double base = inner(a * x, x).real();
    t.le(std::pow(std::max(0.0, base), r), inner(matrix_power(a, r) * x, x).real());
  }
  return t.rep;
}

LemmaReport lm5(const InstanceSpec& s) {
  Tally t("lm5", kOperatorTol);
  Rng rng = stream(s, "lm5");
  const CMatrix a = random_matrix(rng, s.ensemble == Ensemble::PSD ? Ensemble::PSD : Ensemble::ComplexGaussian, s.dim,
                                  s.dim, s.scale);
  const CVector x = random_vector(rng, s.dim);
  const CVector y = random_vector(rng, s.dim);
  const CMatrix abs_a = abs_op(a);
  const CMatrix abs_ad = abs_op(a.adjoint());
  for (double p : {0.25, 0.5, 0.75}) {
    const CMatrix fa = psd_power(abs_a, p);
    const CMatrix ga = psd_power(abs_ad, 1.0 - p);
    t.le(std::abs(inner(a * x, y)), (fa * x).norm() * (ga * y).norm());
  }
  return t.rep;
}

LemmaReport lm6(const InstanceSpec& s) {
  Tally t("lm6", kVectorTol);
  Rng rng = stream(s, "lm6");
  const CVector x1 = random_vector(rng, s.dim, s.scale);
  const CVector x2 = random_vector(rng, s.dim, s.scale);
  const CVector e = unit(rng, s.dim);
  const double lhs = std::abs(inner(x1, e) * inner(e, x2));
  for (Complex alpha : kAlphas) {
    const double al = std::abs(alpha);
    const double rhs = (std::max(1.0, std::abs(alpha - 1.0)) * x1.norm() * x2.norm() + std::abs(inner(x1, x2))) / al;
    t.le(lhs, rhs);
  }
  return t.rep;
}

LemmaReport lm8(const InstanceSpec& s) {
  Tally t("lm8", kOperatorTol);
  Rng rng = stream(s, "lm8");
  const CMatrix a = random_matrix(rng, Ensemble::ComplexGaussian, s.dim, s.dim, s.scale);
  const CVector x = random_vector(rng, s.dim);
  const CVector y = random_vector(rng, s.dim);
  const double lhs = std::norm(inner(a * x, y));
  const double rhs = inner(abs_op(a) * x, x).real() * inner(abs_op(a.adjoint()) * y, y).real();
  t.le(lhs, rhs);
  return t.rep;
}

LemmaReport lm9(const InstanceSpec& s) {
  Tally t("lm9", kOperatorTol);
  Rng rng = stream(s, "lm9");
  const std::size_t n = std::max<std::size_t>(1, s.n_blocks);
  std::vector<double> a(n);
  for (auto& v : a) v = rng.uniform() * 10.0 + 1e-3;
  for (int r = 1; r <= 3; ++r) {
    double sum = 0.0;
    double sum_r = 0.0;
    for (double v : a) {
      sum += v;
      sum_r += std::pow(v, r);
    }
    t.le(std::pow(sum, r), std::pow(static_cast<double>(n), r - 1) * sum_r);
    // equal entries saturate
    const double nn = static_cast<double>(n);
    t.eq(std::pow(nn * a[0], r), std::pow(nn, r - 1) * nn * std::pow(a[0], r));
  }
  return t.rep;
}

LemmaReport lm11(const InstanceSpec& s) {
  Tally t("lm11", kOperatorTol);
  Rng rng = stream(s, "lm11");
  const std::size_t n = std::max<std::size_t>(1, s.n_blocks);
  const RkhsModel m = RkhsModel::finite_standard(s.dim);
  std::vector<CMatrix> as;
  for (std::size_t i = 0; i < n; ++i) as.push_back(random_matrix(rng, Ensemble::PSD, s.dim, s.dim, s.scale));
  CMatrix sum = CMatrix::Zero(s.dim, s.dim);
  for (const auto& a : as) sum += a;
  const double base = berezin_norm(sum, m).value;
  for (int r = 1; r <= 3; ++r) {
    CMatrix pw = CMatrix::Zero(s.dim, s.dim);
    for (const auto& a : as) pw += matrix_power(a, r);
    t.le(std::pow(base, r), std::pow(static_cast<double>(n), r - 1) * berezin_norm(pw, m).value);
  }
  return t.rep;
}

LemmaReport lm13(const InstanceSpec& s) {
  Tally t("lm13", kVectorTol);
  Rng rng = stream(s, "lm13");
  const std::size_t n = s.n_blocks >= 3 ? s.n_blocks : 3 + s.seed % 2;
  std::vector<CVector> x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(random_vector(rng, s.dim, s.scale));
  const CVector e = unit(rng, s.dim);
  Complex prod = 1.0;
  Complex tail = 1.0;
  double norms = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex c = inner(x[i], e);
    prod *= c;
    if (i >= 2) tail *= c;
    norms *= x[i].norm();
  }
  for (Complex alpha : kAlphas) {
    const double rhs = (std::abs(inner(x[0], x[1]) * tail) + std::max(1.0, std::abs(alpha - 1.0)) * norms) /
                       std::abs(alpha);
    t.le(std::abs(prod), rhs);
  }
  return t.rep;
}

LemmaReport lmi(const InstanceSpec& s) {
  Tally t("lmi", 1e-8);
  Rng rng = stream(s, "lmi");
  CMatrix a(s.dim, s.dim);
  for (Eigen::Index j = 0; j < s.dim; ++j) {
    for (Eigen::Index i = 0; i < s.dim; ++i) a(i, j) = std::abs(rng.normal()) * s.scale;
  }
  t.eq(numerical_radius(a), numerical_radius_entrywise_nonneg(a));
  return t.rep;
}

LemmaReport lm7i(const InstanceSpec& s) {
  Tally t("lm7i", kOperatorTol);
  Rng rng = stream(s, "lm7i");
  const CMatrix a = random_matrix(rng, s.ensemble, s.dim, s.dim, s.scale);
  const CMatrix d = random_matrix(rng, s.ensemble, s.dim, s.dim, s.scale);
  const RkhsModel f = RkhsModel::finite_standard(s.dim);
  const RkhsModel sum = RkhsModel::direct_sum({f, f});
  const double lhs = berezin_number(assemble_block(BlockMatrix::diagonal({a, d})), sum).value;
  t.le(lhs, std::max(berezin_number(a, f).value, berezin_number(d, f).value));
  return t.rep;
}

LemmaReport lm7ii(const InstanceSpec& s) {
  Tally t("lm7ii", kOperatorTol);
  Rng rng = stream(s, "lm7ii");
  const CMatrix b = random_matrix(rng, s.ensemble, s.dim, s.dim, s.scale);
  const CMatrix c = random_matrix(rng, s.ensemble, s.dim, s.dim, s.scale);
  const RkhsModel f = RkhsModel::finite_standard(s.dim);
  const RkhsModel sum = RkhsModel::direct_sum({f, f});
  t.le(berezin_number(assemble_block(BlockMatrix::off_diagonal(b, c)), sum).value, 0.5 * (op_norm(b) + op_norm(c)));
  t.le(berezin_number(assemble_block(BlockMatrix::off_diagonal(b, b)), sum).value, op_norm(b));
  return t.rep;
}

// Corner embeddings over DirectSum(m, m): the embedded Berezin number is
// ber(A) / 2 on standard models, so comparisons transfer.
LemmaReport lm10(const InstanceSpec& s) {
  Tally t("lm10", kOperatorTol);
  Rng rng = stream(s, "lm10");
  const CMatrix a = random_matrix(rng, s.ensemble, s.dim, s.dim, s.scale);
  const CMatrix b = random_matrix(rng, s.ensemble, s.dim, s.dim, s.scale);
  const RkhsModel f = RkhsModel::finite_standard(s.dim);
  const RkhsModel sum = RkhsModel::direct_sum({f, f});
  const double ea = berezin_number(assemble_block(corner_embed(a)), sum).value;
  const double eb = berezin_number(assemble_block(corner_embed(b)), sum).value;
  const double ba = berezin_number(a, f).value;
  const double bb = berezin_number(b, f).value;
  t.eq(ea, 0.5 * ba);
  t.eq(eb, 0.5 * bb);
  if (ea <= eb) {
    t.le(ba, bb);
  } else {
    t.le(bb, ba);
  }
  return t.rep;
}

using LemmaFn = std::function<LemmaReport(const InstanceSpec&)>;

const std::map<std::string, LemmaFn, std::less<>>& lemma_table() {
  static const std::map<std::string, LemmaFn, std::less<>> table{
      {"lm1", lm1},   {"lm5", lm5},   {"lm6", lm6},     {"lm8", lm8},     {"lm9", lm9},  {"lm11", lm11},
      {"lm13", lm13}, {"lmi", lmi},   {"lm7i", lm7i},   {"lm7ii", lm7ii}, {"lm10", lm10},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids{"lm1", "lm5",  "lm6",  "lm8",   "lm9", "lm11",
                                            "lm13", "lmi", "lm7i", "lm7ii", "lm10"};
  return ids;
}

LemmaReport check_lemma(std::string_view id, const InstanceSpec& spec) {
  const auto& table = lemma_table();
  const auto it = table.find(id);
  if (it == table.end()) throw Error(ErrorCode::UnknownLemma, "unknown lemma id '" + std::string(id) + "'");
  if (spec.dim < 1) throw Error(ErrorCode::BadSpec, "lemma check needs dim >= 1");
  return it->second(spec);
}

LemmaReport lemma_suite(std::string_view id, std::size_t trials, std::uint64_t base_seed) {
  LemmaReport total;
  total.lemma_id = std::string(id);
  total.min_slack = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < trials; ++k) {
    InstanceSpec s;
    s.seed = base_seed + k;
    s.dim = 1 + static_cast<Eigen::Index>(s.seed % 6);
    s.n_blocks = 1 + static_cast<std::size_t>((s.seed / 6) % 4);
    if (id == "lm13") s.n_blocks = 3 + static_cast<std::size_t>((s.seed / 6) % 2);
    static const Ensemble cycle[] = {Ensemble::ComplexGaussian, Ensemble::PSD, Ensemble::Nilpotent,
                                     Ensemble::Unitary};
    s.ensemble = cycle[(s.seed / 24) % 4];
    s.scale = (s.seed % 5 == 4) ? 10.0 : 1.0;
    const LemmaReport r = check_lemma(id, s);
    total.holds = total.holds && r.holds;
    total.min_slack = std::min(total.min_slack, r.min_slack);
    total.tolerance = r.tolerance;
    total.samples += r.samples;
  }
  return total;
}

}  // namespace berezin
