#include "berezin/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "berezin/error.hpp"
#include "berezin/optimize.hpp"

namespace berezin {

namespace {

constexpr double kFgTolerance = 1e-9;

double ber(const CMatrix& a, const RkhsModel& m, const GridSpec& grid) { return berezin_number(a, m, grid).value; }

double bernorm(const CMatrix& a, const RkhsModel& m, const GridSpec& grid) { return berezin_norm(a, m, grid).value; }

bool same_model(const RkhsModel& a, const RkhsModel& b) {
  return &a == &b || a.describe() == b.describe();
}

double bernorm(const CMatrix& a, const RkhsModel& domain, const RkhsModel& codomain, const GridSpec& grid) {
  if (same_model(domain, codomain)) return bernorm(a, domain, grid);
  return berezin_norm(a, domain, codomain, grid).value;
}

double c_inf(const CMatrix& a, const RkhsModel& m, const GridSpec& grid) { return berezin_inf_c(a, m, grid).value; }

double max_one_shift(Complex z) { return std::max(1.0, std::abs(z - 1.0)); }

double root(double value, int k) {
  if (value <= 0.0) return 0.0;
  return k == 1 ? value : std::pow(value, 1.0 / k);
}

// |A*| = (A A*)^{1/2}
CMatrix abs_adj(const CMatrix& a) { return abs_op(a.adjoint()); }

void require_two_by_two(const BlockMatrix& b) {
  if (b.n() != 2) {
    throw Error(ErrorCode::NotTwoByTwo, "expected a 2x2 block matrix, got " + std::to_string(b.n()) + "x" +
                                            std::to_string(b.n()));
  }
}

void require_square_blocks(const BlockMatrix& b) {
  if (b.row_dims() != b.col_dims()) {
    throw Error(ErrorCode::NonConformalBlocks, "diagonal blocks must be square");
  }
}

void require_uniform(const BlockMatrix& b) {
  if (!b.uniform()) throw Error(ErrorCode::NonConformalBlocks, "all blocks must act on one common space");
}

void require_same_square(const CMatrix& a, const CMatrix& b, std::string_view what) {
  require_square(a, what);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": operators differ in shape");
  }
}

void require_psd(const CMatrix& a, std::string_view what) {
  require_square(a, what);
  if (!is_psd(a)) throw Error(ErrorCode::NotPSD, std::string(what) + " must be positive semidefinite");
}

void require_power(int r) {
  if (r < 1) throw Error(ErrorCode::BadPower, "power r must be >= 1, got " + std::to_string(r));
}

void require_alpha(Complex alpha) {
  if (!(std::abs(alpha) > 0.0) || !std::isfinite(std::abs(alpha))) {
    throw Error(ErrorCode::ZeroAlpha, "alpha must be a finite nonzero scalar");
  }
}

// sum of the operators in `terms`, each raised to the r-th matrix power
CMatrix sum_of_powers(const std::vector<CMatrix>& terms, int r) {
  CMatrix out = CMatrix::Zero(terms.front().rows(), terms.front().cols());
  for (const auto& t : terms) out += matrix_power(hermitian_part(t), r);
  return out;
}

void validate_pair(const SpectralPair& fg, const std::vector<const CMatrix*>& positives) {
  if (!fg.f || !fg.g) throw Error(ErrorCode::BadFunctionPair, "spectral pair has an empty function");
  std::vector<double> samples{0.0};
  for (const CMatrix* p : positives) {
    const RVector ev = herm_eigenvalues(hermitian_part(*p));
    for (Eigen::Index i = 0; i < ev.size(); ++i) samples.push_back(std::max(0.0, ev(i)));
  }
  for (double s : samples) {
    const double f = fg.f(s);
    const double g = fg.g(s);
    if (!std::isfinite(f) || !std::isfinite(g)) {
      throw Error(ErrorCode::NonFiniteFunctionValue, "f or g is not finite at " + std::to_string(s));
    }
    if (f < 0.0 || g < 0.0 || std::abs(f * g - s) > kFgTolerance * std::max(1.0, s)) {
      throw Error(ErrorCode::BadFunctionPair, "f(t) g(t) != t at t = " + std::to_string(s));
    }
  }
}

// ||f^2(|X|) + g^2(|Y*|)||_ber on the model hosting both terms
double fg_term(const CMatrix& abs_x, const CMatrix& abs_y_adj, const SpectralPair& fg, const RkhsModel& m,
               const GridSpec& grid) {
  auto f2 = [&](double t) { const double v = fg.f(t); return v * v; };
  auto g2 = [&](double t) { const double v = fg.g(t); return v * v; };
  const CMatrix s = apply_spectral_fn(abs_x, f2) + apply_spectral_fn(abs_y_adj, g2);
  return bernorm(s, m, grid);
}

const CMatrix& first(const std::vector<CMatrix>& list, std::string_view name) {
  if (list.empty()) throw Error(ErrorCode::ListLengthMismatch, std::string("missing operator list '") + std::string(name) + "'");
  return list.front();
}

}  // namespace

SpectralPair power_pair(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorCode::BadParameter, "power split must lie in [0, 1]");
  return SpectralPair{[s](double x) { return std::pow(x, s); }, [s](double x) { return std::pow(x, 1.0 - s); },
                      "power(" + std::to_string(s) + ")"};
}

SpectralPair shifted_root_pair() {
  return SpectralPair{[](double x) { return x / std::sqrt(1.0 + x); }, [](double x) { return std::sqrt(1.0 + x); },
                      "shifted_root"};
}

BoundInput BoundInput::from_blocks(BlockMatrix b) {
  BoundInput in;
  in.blocks = std::move(b);
  return in;
}

BoundInput BoundInput::single(CMatrix a) {
  BoundInput in;
  in.as.push_back(std::move(a));
  return in;
}

BoundInput BoundInput::lists(std::vector<CMatrix> as, std::vector<CMatrix> bs, std::vector<CMatrix> xs) {
  BoundInput in;
  in.as = std::move(as);
  in.bs = std::move(bs);
  in.xs = std::move(xs);
  return in;
}

std::vector<RkhsModel> block_factors(const RkhsModel& m, std::size_t n) {
  if (m.is_direct_sum()) {
    auto f = m.factors();
    if (f.size() == n) return f;
  }
  if (n == 1) return {m};
  return std::vector<RkhsModel>(n, m);
}

// ---------------------------------------------------------------------------
// Block bounds

double block_bound(const BlockMatrix& blocks, const SpectralPair& fg, const RkhsModel& m, const GridSpec& grid) {
  require_square_blocks(blocks);
  const std::size_t n = blocks.n();
  const auto factors = block_factors(m, n);

  std::vector<CMatrix> abs_blocks(n * n);
  std::vector<CMatrix> abs_adj_blocks(n * n);
  std::vector<const CMatrix*> positives;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      abs_blocks[i * n + j] = abs_op(blocks(i, j));
      abs_adj_blocks[i * n + j] = abs_adj(blocks(i, j));
    }
  }
  for (std::size_t k = 0; k < n * n; ++k) {
    if (abs_blocks[k].size() > 0) {
      positives.push_back(&abs_blocks[k]);
      positives.push_back(&abs_adj_blocks[k]);
    }
  }
  validate_pair(fg, positives);

  CMatrix hat = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    hat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = ber(blocks(i, i), factors[i], grid);
    for (std::size_t j = i + 1; j < n; ++j) {
      // |A_ij| and |A*_ji| live on H_j; |A_ji| and |A*_ij| on H_i.
      const double on_j = fg_term(abs_blocks[i * n + j], abs_adj_blocks[j * n + i], fg, factors[j], grid);
      const double on_i = fg_term(abs_blocks[j * n + i], abs_adj_blocks[i * n + j], fg, factors[i], grid);
      hat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::sqrt(on_j) * std::sqrt(on_i);
    }
  }
  return numerical_radius_entrywise_nonneg(hat);
}

double two_by_two_bound(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid) {
  require_two_by_two(blocks);
  require_square_blocks(blocks);
  const auto f = block_factors(m, 2);
  const double b1 = ber(blocks(0, 0), f[0], grid);
  const double b2 = ber(blocks(1, 1), f[1], grid);
  const double p = bernorm(abs_op(blocks(0, 1)) + abs_adj(blocks(1, 0)), f[1], grid);
  const double q = bernorm(abs_op(blocks(1, 0)) + abs_adj(blocks(0, 1)), f[0], grid);
  return 0.5 * (b1 + b2 + std::sqrt((b1 - b2) * (b1 - b2) + p * q));
}

double two_by_two_norm_baseline(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid) {
  require_two_by_two(blocks);
  require_square_blocks(blocks);
  const auto f = block_factors(m, 2);
  const double b1 = ber(blocks(0, 0), f[0], grid);
  const double b2 = ber(blocks(1, 1), f[1], grid);
  const double s = op_norm(blocks(0, 1)) + op_norm(blocks(1, 0));
  return 0.5 * (b1 + b2 + std::sqrt((b1 - b2) * (b1 - b2) + s * s));
}

double two_by_two_radius_baseline(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid) {
  require_two_by_two(blocks);
  require_square_blocks(blocks);
  const auto f = block_factors(m, 2);
  const double b1 = ber(blocks(0, 0), f[0], grid);
  const double b2 = ber(blocks(1, 1), f[1], grid);
  const BlockMatrix off = BlockMatrix::off_diagonal(blocks(0, 1), blocks(1, 0));
  const double w = numerical_radius(assemble_block(off));
  return 0.5 * (b1 + b2 + std::sqrt((b1 - b2) * (b1 - b2) + 4.0 * w * w));
}

RMatrix block_bernorm_matrix(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid) {
  const std::size_t n = blocks.n();
  const auto f = block_factors(m, n);
  RMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // A_ij maps H_j into H_i
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = bernorm(blocks(i, j), f[j], f[i], grid);
    }
  }
  return out;
}

double block_bernorm_bound(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid) {
  return op_norm(block_bernorm_matrix(blocks, m, grid).cast<Complex>());
}

double diagonal_bernorm_bound(const CMatrix& a, const CMatrix& d, const RkhsModel& m, const GridSpec& grid) {
  require_square(a, "A");
  require_square(d, "D");
  const auto f = block_factors(m, 2);
  return std::max(bernorm(a, f[0], grid), bernorm(d, f[1], grid));
}

double diagonal_ber_baseline(const CMatrix& a, const CMatrix& d, const RkhsModel& m, const GridSpec& grid) {
  require_square(a, "A");
  require_square(d, "D");
  const auto f = block_factors(m, 2);
  return std::max(ber(a, f[0], grid), ber(d, f[1], grid));
}

double offdiag_bernorm_bound(const CMatrix& b, const CMatrix& c, const RkhsModel& m, const GridSpec& grid) {
  const auto f = block_factors(m, 2);
  // B : H2 -> H1, C : H1 -> H2
  return std::max(bernorm(b, f[1], f[0], grid), bernorm(c, f[0], f[1], grid));
}

double offdiag_opnorm_baseline(const CMatrix& b, const CMatrix& c) { return 0.5 * (op_norm(b) + op_norm(c)); }

namespace {

struct OffdiagTerms {
  double ber_products = 0.0;  // max{ber(AB), ber(BA)}
  double gram = 0.0;          // max{||AA* + B*B||_ber, ||BB* + A*A||_ber}
};

OffdiagTerms offdiag_terms(const CMatrix& a, const CMatrix& b, const RkhsModel& m, const GridSpec& grid) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) {
    throw Error(ErrorCode::NonConformalBlocks, "A : H2 -> H1 and B : H1 -> H2 have incompatible shapes");
  }
  const auto f = block_factors(m, 2);
  OffdiagTerms t;
  t.ber_products = std::max(ber(a * b, f[0], grid), ber(b * a, f[1], grid));
  t.gram = std::max(bernorm(a * a.adjoint() + b.adjoint() * b, f[0], grid),
                    bernorm(b * b.adjoint() + a.adjoint() * a, f[1], grid));
  return t;
}

}  // namespace

double offdiag_alpha_bound(const CMatrix& a, const CMatrix& b, Complex alpha, const RkhsModel& m,
                           const GridSpec& grid) {
  require_alpha(alpha);
  const OffdiagTerms t = offdiag_terms(a, b, m, grid);
  const double al = std::abs(alpha);
  return std::sqrt(t.ber_products / al + max_one_shift(alpha) / (2.0 * al) * t.gram);
}

double offdiag_limit_bound(const CMatrix& a, const CMatrix& b, const RkhsModel& m, const GridSpec& grid) {
  return std::sqrt(0.5 * offdiag_terms(a, b, m, grid).gram);
}

double offdiag_symmetric_alpha_bound(const CMatrix& a, Complex alpha, const RkhsModel& m, const GridSpec& grid) {
  require_alpha(alpha);
  require_square(a, "A");
  const auto f = block_factors(m, 2);
  const double al = std::abs(alpha);
  const double gram = bernorm(a * a.adjoint() + a.adjoint() * a, f[0], grid);
  return std::sqrt(max_one_shift(alpha) / (2.0 * al) * gram + ber(a * a, f[0], grid) / al);
}

double offdiag_symmetric_limit_bound(const CMatrix& a, const RkhsModel& m, const GridSpec& grid) {
  require_square(a, "A");
  const auto f = block_factors(m, 2);
  return std::sqrt(0.5 * bernorm(a * a.adjoint() + a.adjoint() * a, f[0], grid));
}

namespace {

double full_terms(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid, std::optional<Complex> alpha) {
  require_two_by_two(blocks);
  require_square_blocks(blocks);
  const auto f = block_factors(m, 2);
  const CMatrix& a = blocks(0, 0);
  const CMatrix& b = blocks(0, 1);
  const CMatrix& c = blocks(1, 0);
  const CMatrix& d = blocks(1, 1);
  const double ba = ber(a, f[0], grid);
  const double bd = ber(d, f[1], grid);
  const double nb = bernorm(b, f[1], f[0], grid);
  const double nc = bernorm(c, f[0], f[1], grid);
  const double gram = std::max(bernorm(a.adjoint() * a + b * b.adjoint(), f[0], grid),
                               bernorm(c * c.adjoint() + d.adjoint() * d, f[1], grid));
  double value = std::max(ba * ba, bd * bd) + std::max(nb * nb, nc * nc);
  if (alpha) {
    const double al = std::abs(*alpha);
    const double cross = std::max(bernorm(b * d, f[1], f[0], grid), bernorm(c * a, f[0], f[1], grid));
    value += max_one_shift(*alpha) / al * gram + 2.0 / al * cross;
  } else {
    value += gram;
  }
  return std::sqrt(value);
}

void require_symmetric_pair(const CMatrix& a, const CMatrix& b) { require_same_square(a, b, "symmetric block pair"); }

}  // namespace

double full_alpha_bound(const BlockMatrix& blocks, Complex alpha, const RkhsModel& m, const GridSpec& grid) {
  require_alpha(alpha);
  return full_terms(blocks, m, grid, alpha);
}

double full_limit_bound(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid) {
  return full_terms(blocks, m, grid, std::nullopt);
}

double symmetric_full_bound(const CMatrix& a, const CMatrix& b, const RkhsModel& m, const GridSpec& grid) {
  require_symmetric_pair(a, b);
  const auto f = block_factors(m, 2);
  const double nb = bernorm(b, f[0], grid);
  const double ba = ber(a, f[0], grid);
  return std::sqrt(nb * nb + ba * ba + bernorm(a.adjoint() * a + b * b.adjoint(), f[0], grid));
}

double symmetric_full_baseline(const CMatrix& a, const CMatrix& b, const RkhsModel& m, const GridSpec& grid) {
  require_symmetric_pair(a, b);
  const auto f = block_factors(m, 2);
  return 0.5 * (ber(abs_op(a) + abs_adj(a), f[0], grid) + ber(abs_op(b) + abs_adj(b), f[0], grid));
}

double full_bernorm_bound(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid) {
  require_two_by_two(blocks);
  require_uniform(blocks);
  const auto f = block_factors(m, 2);
  const Complex i(0.0, 1.0);
  const CMatrix& a = blocks(0, 0);
  const CMatrix& b = blocks(0, 1);
  const CMatrix& c = blocks(1, 0);
  const CMatrix& d = blocks(1, 1);
  const CMatrix abs_a = abs_op(a);
  const CMatrix abs_b = abs_op(b);
  const CMatrix abs_c = abs_op(c);
  const CMatrix abs_d = abs_op(d);
  const double first = std::max(ber(abs_a + i * abs_c, f[0], grid), ber(abs_d + i * abs_b, f[1], grid));
  const double second =
      std::max(ber(abs_adj(a) + i * abs_adj(b), f[0], grid), ber(abs_adj(d) + i * abs_adj(c), f[1], grid));
  const double squares =
      std::max(bernorm(abs_a * abs_a + abs_c * abs_c, f[0], grid), bernorm(abs_b * abs_b + abs_d * abs_d, f[1], grid));
  const double cross =
      std::max(bernorm(c.adjoint() * d, f[1], f[0], grid), bernorm(b.adjoint() * a, f[0], f[1], grid));
  return std::sqrt(first * second + 0.5 * squares + cross);
}

double full_ber_baseline(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid) {
  require_two_by_two(blocks);
  require_square_blocks(blocks);
  const auto f = block_factors(m, 2);
  const double ba = ber(blocks(0, 0), f[0], grid);
  const double bd = ber(blocks(1, 1), f[1], grid);
  const double nc = op_norm(blocks(1, 0));
  const double nb = op_norm(blocks(0, 1));
  const double q = 0.25 * bd * bd;
  return 0.5 * bd + ba + 0.5 * std::sqrt(q + nc * nc) + 0.5 * std::sqrt(q + nb * nb);
}

// ---------------------------------------------------------------------------
// Sums of products

double sum_products_bound(const std::vector<CMatrix>& as, const std::vector<CMatrix>& bs,
                          const std::vector<CMatrix>& xs, int r, const RkhsModel& m, const GridSpec& grid) {
  require_power(r);
  if (as.empty() || as.size() != bs.size() || as.size() != xs.size()) {
    throw Error(ErrorCode::ListLengthMismatch, "A, B and X lists must have one common nonzero length");
  }
  std::vector<CMatrix> grams;
  double xmax = 0.0;
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (as[i].rows() != xs[i].rows() || xs[i].cols() != bs[i].rows() || as[i].cols() != bs[i].cols()) {
      throw Error(ErrorCode::NonConformalBlocks, "A_i* X_i B_i is not defined for term " + std::to_string(i));
    }
    grams.push_back(as[i].adjoint() * as[i] + bs[i].adjoint() * bs[i]);
    xmax = std::max(xmax, op_norm(xs[i]));
  }
  const double n = static_cast<double>(as.size());
  const double value =
      std::pow(n, r - 1) / std::pow(2.0, r) * std::pow(xmax, r) * bernorm(sum_of_powers(grams, r), m, grid);
  return root(value, r);
}

double sum_products_plain_bound(const std::vector<CMatrix>& as, const std::vector<CMatrix>& bs, int r,
                                const RkhsModel& m, const GridSpec& grid) {
  require_power(r);
  if (as.empty() || as.size() != bs.size()) {
    throw Error(ErrorCode::ListLengthMismatch, "A and B lists must have one common nonzero length");
  }
  std::vector<CMatrix> grams;
  for (std::size_t i = 0; i < as.size(); ++i) {
    if (as[i].cols() != bs[i].rows() || as[i].rows() != bs[i].cols()) {
      throw Error(ErrorCode::NonConformalBlocks, "A_i B_i is not a square product for term " + std::to_string(i));
    }
    grams.push_back(as[i] * as[i].adjoint() + bs[i].adjoint() * bs[i]);
  }
  const double n = static_cast<double>(as.size());
  return root(std::pow(n, r - 1) / std::pow(2.0, r) * bernorm(sum_of_powers(grams, r), m, grid), r);
}

double sum_bound(const std::vector<CMatrix>& as, int r, const RkhsModel& m, const GridSpec& grid) {
  require_power(r);
  if (as.empty()) throw Error(ErrorCode::ListLengthMismatch, "A list is empty");
  std::vector<CMatrix> left;
  std::vector<CMatrix> right;
  for (const auto& a : as) {
    require_same_square(a, as.front(), "A_i");
    const CMatrix id = identity(a.rows());
    left.push_back(a * a.adjoint() + id);
    right.push_back(a.adjoint() * a + id);
  }
  const double n = static_cast<double>(as.size());
  const double best = std::min(bernorm(sum_of_powers(left, r), m, grid), bernorm(sum_of_powers(right, r), m, grid));
  return root(std::pow(n, r - 1) / std::pow(2.0, r) * best, r);
}

double product_bound(const CMatrix& a, const CMatrix& b, const std::optional<CMatrix>& x, int r, const RkhsModel& m,
                     const GridSpec& grid) {
  require_power(r);
  if (a.cols() != b.cols()) throw Error(ErrorCode::NonConformalBlocks, "A* B is not square");
  const double xn = x ? op_norm(*x) : 1.0;
  if (x && (x->rows() != a.rows() || x->cols() != b.rows())) {
    throw Error(ErrorCode::NonConformalBlocks, "A* X B is not defined");
  }
  if (!x && a.rows() != b.rows()) throw Error(ErrorCode::NonConformalBlocks, "A* B is not defined");
  const CMatrix gram = a.adjoint() * a + b.adjoint() * b;
  return root(std::pow(xn, r) / std::pow(2.0, r) * bernorm(matrix_power(hermitian_part(gram), r), m, grid), r);
}

double weighted_product_bound(const CMatrix& a, const CMatrix& b, const std::optional<CMatrix>& x, double s, int r,
                              const RkhsModel& m, const GridSpec& grid) {
  require_power(r);
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorCode::BadParameter, "power split must lie in [0, 1]");
  require_psd(a, "A");
  require_psd(b, "B");
  require_same_square(a, b, "positive pair");
  if (x) require_same_square(*x, a, "X");
  const double xn = x ? op_norm(*x) : 1.0;
  const CMatrix sum = psd_power(a, 2.0 * s) + psd_power(b, 2.0 * (1.0 - s));
  return root(std::pow(xn, r) / std::pow(2.0, r) * bernorm(matrix_power(hermitian_part(sum), r), m, grid), r);
}

double commuting_mean_bound(const CMatrix& a, const CMatrix& b, int r, const RkhsModel& m, const GridSpec& grid) {
  require_power(r);
  require_psd(a, "A");
  require_psd(b, "B");
  require_same_square(a, b, "positive pair");
  const double scale = std::max(1.0, op_norm(a) * op_norm(b));
  if ((a * b - b * a).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw Error(ErrorCode::BadParameter, "A and B must commute");
  }
  const CMatrix mean = hermitian_part(0.5 * (a + b));
  return root(bernorm(matrix_power(mean, r), m, grid), r);
}

// ---------------------------------------------------------------------------
// Baselines

double sum_baseline(const CMatrix& a1, const CMatrix& a2, const RkhsModel& m, const GridSpec& grid) {
  require_same_square(a1, a2, "A1, A2");
  const Complex i(0.0, 1.0);
  const CMatrix t = a1.adjoint() * a1 + a2.adjoint() * a2 + i * (a1 * a1.adjoint() + a2 * a2.adjoint());
  return std::sqrt(std::sqrt(2.0) * ber(t, m, grid));
}

double product_baseline(const CMatrix& a, const CMatrix& b, int r, const RkhsModel& m, const GridSpec& grid) {
  require_power(r);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "A and B must have the same shape");
  }
  const CMatrix pa = psd_power(abs_op(a), 2.0 * r);
  const CMatrix pb = psd_power(abs_op(b), 2.0 * r);
  const double s = ber(pa + pb, m, grid);
  const double c = c_inf(pa - pb, m, grid);
  return root(0.5 * std::sqrt(std::max(0.0, s * s - c * c)), r);
}

double psd_product_baseline(const CMatrix& a, const CMatrix& b, const RkhsModel& m, const GridSpec& grid) {
  require_psd(a, "A");
  require_psd(b, "B");
  require_same_square(a, b, "positive pair");
  const double s = bernorm(a * a + b * b, m, grid);
  const double c = c_inf(a * a - b * b, m, grid);
  return root(0.25 * std::max(0.0, s * s - c * c), 4);
}

double psd_product_baseline_literal(const CMatrix& a, const CMatrix& b, const RkhsModel& m, const GridSpec& grid) {
  require_psd(a, "A");
  require_psd(b, "B");
  require_same_square(a, b, "positive pair");
  const double s = bernorm(a * a + b * b, m, grid);
  const double c = c_inf(a * a - b * b, m, grid);
  return root(0.25 * std::max(0.0, s - c * c), 4);
}

double power_baseline(const CMatrix& a, int r, const RkhsModel& m, const GridSpec& grid) {
  require_power(r);
  require_square(a, "A");
  const CMatrix t = psd_power(abs_op(a), r) + psd_power(abs_adj(a), r);
  return root(0.5 * ber(t, m, grid), r);
}

// ---------------------------------------------------------------------------
// Power inequalities for a single operator

double CubicTerms::rhs(double alpha, double beta) const {
  const double ab = alpha * beta;
  return ber3 / ab +
         (std::max(1.0, std::abs(beta - 1.0)) / ab * mixed + std::max(1.0, std::abs(alpha - 1.0)) / (2.0 * alpha) * sum) *
             outer;
}

CubicTerms cubic_terms(const CMatrix& a, CubicVariant variant, const RkhsModel& m, const GridSpec& grid) {
  require_square(a, "A");
  const CMatrix ad = a.adjoint();
  const CMatrix abs_a = abs_op(a);
  const CMatrix abs_ad = abs_adj(a);
  CubicTerms t;
  t.sum = bernorm(abs_a * abs_a + abs_ad * abs_ad, m, grid);
  switch (variant) {
    case CubicVariant::Plain: {
      const CMatrix a2 = a * a;
      t.ber3 = ber(a2 * a, m, grid);
      t.mixed = std::sqrt(bernorm(a2.adjoint() * a2, m, grid));
      t.outer = std::sqrt(bernorm(a * ad, m, grid));
      break;
    }
    case CubicVariant::AdjointAbs:
      t.ber3 = ber(ad * abs_ad * abs_a, m, grid);
      t.mixed = std::sqrt(bernorm(abs_a * abs_ad * abs_ad * abs_a, m, grid));
      t.outer = std::sqrt(bernorm(ad * a, m, grid));
      break;
    case CubicVariant::AbsAdjoint:
      t.ber3 = ber(a * abs_a * abs_ad, m, grid);
      t.mixed = std::sqrt(bernorm(abs_ad * abs_a * abs_a * abs_ad, m, grid));
      t.outer = std::sqrt(bernorm(a * ad, m, grid));
      break;
  }
  return t;
}

AlphaBetaMinimum minimize_alpha_beta(const CubicTerms& terms, const AlphaBetaSearch& search) {
  if (!(search.lo > 0.0 && search.hi >= search.lo) || search.points < 1) {
    throw Error(ErrorCode::BadParameter, "alpha/beta search needs 0 < lo <= hi and points >= 1");
  }
  AlphaBetaMinimum best{terms.rhs(2.0, 2.0), 2.0, 2.0};
  const double llo = std::log(search.lo);
  const double lhi = std::log(search.hi);
  std::vector<double> axis;
  for (int k = 0; k < search.points; ++k) {
    axis.push_back(search.points == 1 ? search.lo : std::exp(llo + (lhi - llo) * k / (search.points - 1)));
  }
  for (double al : axis) {
    for (double be : axis) {
      const double v = terms.rhs(al, be);
      if (v < best.value) best = {v, al, be};
    }
  }
  if (search.polish && search.points > 1) {
    const double step = (lhi - llo) / (search.points - 1);
    for (int sweep = 0; sweep < 50; ++sweep) {
      const double before = best.value;
      const double la = std::log(best.alpha);
      LineMaximum ma = golden_section_minimize([&](double x) { return terms.rhs(std::exp(x), best.beta); },
                                               std::max(llo, la - step), std::min(lhi, la + step), 1e-12);
      if (ma.value < best.value) best = {ma.value, std::exp(ma.x), best.beta};
      const double lb = std::log(best.beta);
      LineMaximum mb = golden_section_minimize([&](double x) { return terms.rhs(best.alpha, std::exp(x)); },
                                               std::max(llo, lb - step), std::min(lhi, lb + step), 1e-12);
      if (mb.value < best.value) best = {mb.value, best.alpha, std::exp(mb.x)};
      if (!(before - best.value > 1e-15 * std::max(1.0, best.value))) break;
    }
  }
  return best;
}

double cubic_bound(const CMatrix& a, CubicVariant variant, const AlphaBetaSearch& search, const RkhsModel& m,
                   const GridSpec& grid) {
  return root(minimize_alpha_beta(cubic_terms(a, variant, m, grid), search).value, 3);
}

double cubic_bound_fixed(const CMatrix& a, CubicVariant variant, double alpha, double beta, const RkhsModel& m,
                         const GridSpec& grid) {
  if (!(alpha > 0.0 && beta > 0.0)) throw Error(ErrorCode::ZeroAlpha, "alpha and beta must be positive");
  return root(cubic_terms(a, variant, m, grid).rhs(alpha, beta), 3);
}

double quartic_bound(const CMatrix& a, QuarticVariant variant, const RkhsModel& m, const GridSpec& grid) {
  require_square(a, "A");
  const CMatrix abs_a = abs_op(a);
  const CMatrix abs_ad = abs_adj(a);
  const double half_sum = 0.5 * bernorm(abs_a * abs_a + abs_ad * abs_ad, m, grid);
  double x = 0.0;
  double y = 0.0;
  if (variant == QuarticVariant::AbsProduct) {
    x = ber(abs_ad * abs_a, m, grid);
    y = ber(a * a, m, grid);
  } else {
    x = ber(a * abs_a, m, grid);
    y = ber(a.adjoint() * abs_ad, m, grid);
  }
  return root(0.25 * (x + half_sum) * (y + half_sum), 4);
}

double power_bound(const CMatrix& a, int n, const RkhsModel& m, const GridSpec& grid) {
  require_square(a, "A");
  if (n < 2) throw Error(ErrorCode::BadPower, "power n must be >= 2, got " + std::to_string(n));
  const double outer = bernorm(a * a.adjoint(), m, grid);
  double value = ber(matrix_power(a, n), m, grid) / std::pow(2.0, n - 1);
  CMatrix ai = a;
  for (int i = 1; i < n; ++i) {
    value += std::sqrt(bernorm(ai.adjoint() * ai, m, grid)) * std::pow(outer, 0.5 * (n - i)) / std::pow(2.0, i);
    ai = ai * a;
  }
  return root(value, n);
}

// ---------------------------------------------------------------------------
// Registry

namespace {

using RhsFn = std::function<double(const BoundInput&, const RkhsModel&, const BoundParams&, const GridSpec&)>;
using LhsFn = std::function<CMatrix(const BoundInput&, const BoundParams&)>;

struct Entry {
  BoundInfo info;
  RhsFn rhs;
  LhsFn lhs;
};

const BlockMatrix& two(const BoundInput& in) {
  require_two_by_two(in.blocks);
  return in.blocks;
}

CMatrix lhs_assembled(const BoundInput& in, const BoundParams&) {
  if (in.blocks.n() == 0) throw Error(ErrorCode::NonConformalBlocks, "bound needs a block matrix");
  return assemble_block(in.blocks);
}

CMatrix lhs_diagonal(const BoundInput& in, const BoundParams&) {
  const auto& b = two(in);
  return assemble_block(BlockMatrix::diagonal({b(0, 0), b(1, 1)}));
}

CMatrix lhs_off(const BoundInput& in, const BoundParams&) {
  const auto& b = two(in);
  return assemble_block(BlockMatrix::off_diagonal(b(0, 1), b(1, 0)));
}

CMatrix lhs_off_symmetric(const BoundInput& in, const BoundParams&) {
  const auto& b = two(in);
  require_square(b(0, 1), "A");
  return assemble_block(BlockMatrix::off_diagonal(b(0, 1), b(0, 1)));
}

CMatrix lhs_symmetric_full(const BoundInput& in, const BoundParams&) {
  const auto& b = two(in);
  require_symmetric_pair(b(0, 0), b(0, 1));
  return assemble_block(BlockMatrix::two_by_two(b(0, 0), b(0, 1), b(0, 1), b(0, 0)));
}

CMatrix lhs_single(const BoundInput& in, const BoundParams&) {
  const CMatrix& a = first(in.as, "as");
  require_square(a, "A");
  return a;
}

const CMatrix& second(const std::vector<CMatrix>& list, std::string_view name) {
  if (list.size() < 2) {
    throw Error(ErrorCode::ListLengthMismatch, std::string("list '") + std::string(name) + "' needs two operators");
  }
  return list[1];
}

std::optional<CMatrix> optional_x(const BoundInput& in) {
  if (in.xs.empty()) return std::nullopt;
  return in.xs.front();
}

SpectralPair th4_pair(const BoundParams& p) { return p.fg ? *p.fg : power_pair(p.t); }

std::vector<Entry> make_registry() {
  std::vector<Entry> r;
  auto add = [&](std::string id, BoundShape shape, LhsKind kind, int power, std::string desc, RhsFn rhs, LhsFn lhs) {
    r.push_back(Entry{BoundInfo{std::move(id), shape, kind, power, std::move(desc)}, std::move(rhs), std::move(lhs)});
  };
  using S = BoundShape;
  using K = LhsKind;

  add("th4", S::Blocks, K::Ber, 1, "w of the upper-triangular matrix of ber(A_ii) and f,g mixed terms",
      [](auto& in, auto& m, auto& p, auto& g) { return block_bound(in.blocks, th4_pair(p), m, g); }, lhs_assembled);
  add("co1", S::Blocks, K::Ber, 1, "th4 with f = t^s, g = t^(1-s), s = params.t",
      [](auto& in, auto& m, auto& p, auto& g) { return block_bound(in.blocks, power_pair(p.t), m, g); },
      lhs_assembled);
  add("co2", S::Blocks, K::Ber, 1, "th4 with f = g = t^(1/2)",
      [](auto& in, auto& m, auto&, auto& g) { return block_bound(in.blocks, power_pair(0.5), m, g); }, lhs_assembled);
  add("co5", S::TwoByTwo, K::Ber, 1, "closed 2x2 form with || |A12| + |A21*| ||_ber mixed terms",
      [](auto& in, auto& m, auto&, auto& g) { return two_by_two_bound(two(in), m, g); }, lhs_assembled);
  add("eqn12", S::TwoByTwo, K::Ber, 1, "baseline: 2x2 form with (||A12|| + ||A21||)^2",
      [](auto& in, auto& m, auto&, auto& g) { return two_by_two_norm_baseline(two(in), m, g); }, lhs_assembled);
  add("R1E2", S::TwoByTwo, K::Ber, 1, "baseline: 2x2 form with 4 w^2 of the off-diagonal part",
      [](auto& in, auto& m, auto&, auto& g) { return two_by_two_radius_baseline(two(in), m, g); }, lhs_assembled);
  add("th8", S::Blocks, K::BerNorm, 1, "operator norm of [||A_ij||_ber]",
      [](auto& in, auto& m, auto&, auto& g) { return block_bernorm_bound(in.blocks, m, g); }, lhs_assembled);
  add("c28i", S::Diagonal, K::BerNorm, 1, "||diag(A, D)||_ber <= max ||.||_ber",
      [](auto& in, auto& m, auto&, auto& g) { return diagonal_bernorm_bound(two(in)(0, 0), two(in)(1, 1), m, g); },
      lhs_diagonal);
  add("c28ii", S::OffDiagonal, K::BerNorm, 1, "||[[0, B], [C, 0]]||_ber <= max{||B||_ber, ||C||_ber}",
      [](auto& in, auto& m, auto&, auto& g) { return offdiag_bernorm_bound(two(in)(0, 1), two(in)(1, 0), m, g); },
      lhs_off);
  add("eqn14", S::OffDiagonal, K::Ber, 1, "ber([[0, B], [C, 0]]) <= max{||B||_ber, ||C||_ber}",
      [](auto& in, auto& m, auto&, auto& g) { return offdiag_bernorm_bound(two(in)(0, 1), two(in)(1, 0), m, g); },
      lhs_off);
  add("lm7i", S::Diagonal, K::Ber, 1, "ber(diag(A, D)) <= max{ber(A), ber(D)}",
      [](auto& in, auto& m, auto&, auto& g) { return diagonal_ber_baseline(two(in)(0, 0), two(in)(1, 1), m, g); },
      lhs_diagonal);
  add("lm7ii", S::OffDiagonal, K::Ber, 1, "baseline: ber([[0, B], [C, 0]]) <= (||B|| + ||C||) / 2",
      [](auto& in, auto&, auto&, auto&) { return offdiag_opnorm_baseline(two(in)(0, 1), two(in)(1, 0)); }, lhs_off);
  add("th5", S::OffDiagonal, K::Ber, 2, "alpha-parametrized bound for [[0, A], [B, 0]]",
      [](auto& in, auto& m, auto& p, auto& g) { return offdiag_alpha_bound(two(in)(0, 1), two(in)(1, 0), p.alpha, m, g); },
      lhs_off);
  add("inq2", S::OffSymmetric, K::Ber, 2, "alpha-parametrized bound for [[0, A], [A, 0]]",
      [](auto& in, auto& m, auto& p, auto& g) { return offdiag_symmetric_alpha_bound(two(in)(0, 1), p.alpha, m, g); },
      lhs_off_symmetric);
  add("inq3", S::OffSymmetric, K::Ber, 2, "alpha -> infinity limit for [[0, A], [A, 0]]",
      [](auto& in, auto& m, auto&, auto& g) { return offdiag_symmetric_limit_bound(two(in)(0, 1), m, g); },
      lhs_off_symmetric);
  add("co4", S::OffDiagonal, K::Ber, 2, "alpha -> infinity limit for [[0, A], [B, 0]]",
      [](auto& in, auto& m, auto&, auto& g) { return offdiag_limit_bound(two(in)(0, 1), two(in)(1, 0), m, g); },
      lhs_off);
  add("th6", S::TwoByTwo, K::Ber, 2, "alpha-parametrized bound for a full 2x2 block matrix",
      [](auto& in, auto& m, auto& p, auto& g) { return full_alpha_bound(two(in), p.alpha, m, g); }, lhs_assembled);
  add("co6", S::TwoByTwo, K::Ber, 2, "alpha -> infinity limit of th6",
      [](auto& in, auto& m, auto&, auto& g) { return full_limit_bound(two(in), m, g); }, lhs_assembled);
  add("inq5", S::SymmetricFull, K::Ber, 2, "co6 specialized to [[A, B], [B, A]]",
      [](auto& in, auto& m, auto&, auto& g) { return symmetric_full_bound(two(in)(0, 0), two(in)(0, 1), m, g); },
      lhs_symmetric_full);
  add("inq6", S::SymmetricFull, K::Ber, 1, "baseline for [[A, B], [B, A]] via |A| + |A*|",
      [](auto& in, auto& m, auto&, auto& g) { return symmetric_full_baseline(two(in)(0, 0), two(in)(0, 1), m, g); },
      lhs_symmetric_full);
  add("th7", S::TwoByTwo, K::BerNorm, 2, "Berezin-norm bound via ber(|A| + i|C|) products",
      [](auto& in, auto& m, auto&, auto& g) { return full_bernorm_bound(two(in), m, g); }, lhs_assembled);
  add("ee5", S::TwoByTwo, K::Ber, 1, "baseline: ber(D)/2 + ber(A) + square-root terms in ||B||, ||C||",
      [](auto& in, auto& m, auto&, auto& g) { return full_ber_baseline(two(in), m, g); }, lhs_assembled);

  add("th9", S::Lists, K::Ber, 0, "ber(sum A_i* X_i B_i) via ||sum (A_i*A_i + B_i*B_i)^r||_ber",
      [](auto& in, auto& m, auto& p, auto& g) { return sum_products_bound(in.as, in.bs, in.xs, p.r, m, g); },
      [](auto& in, auto&) {
        if (in.as.empty() || in.as.size() != in.bs.size() || in.as.size() != in.xs.size()) {
          throw Error(ErrorCode::ListLengthMismatch, "A, B and X lists must have one common nonzero length");
        }
        CMatrix s = CMatrix::Zero(in.as[0].cols(), in.bs[0].cols());
        for (std::size_t i = 0; i < in.as.size(); ++i) s += in.as[i].adjoint() * in.xs[i] * in.bs[i];
        return s;
      });
  auto sum_ab = [](const BoundInput& in, const BoundParams&) {
    if (in.as.empty() || in.as.size() != in.bs.size()) {
      throw Error(ErrorCode::ListLengthMismatch, "A and B lists must have one common nonzero length");
    }
    CMatrix s = CMatrix::Zero(in.as[0].rows(), in.bs[0].cols());
    for (std::size_t i = 0; i < in.as.size(); ++i) s += in.as[i] * in.bs[i];
    return s;
  };
  add("cot9i", S::Lists, K::Ber, 0, "ber(sum A_i B_i) via ||sum (A_i A_i* + B_i* B_i)^r||_ber",
      [](auto& in, auto& m, auto& p, auto& g) { return sum_products_plain_bound(in.as, in.bs, p.r, m, g); }, sum_ab);
  add("cot9ii", S::Lists, K::Ber, 0, "ber(sum A_i) via the smaller of the two identity-shifted Gram sums",
      [](auto& in, auto& m, auto& p, auto& g) { return sum_bound(in.as, p.r, m, g); },
      [](auto& in, auto&) {
        const CMatrix& a0 = first(in.as, "as");
        CMatrix s = CMatrix::Zero(a0.rows(), a0.cols());
        for (const auto& a : in.as) s += a;
        return s;
      });
  add("cot9iii", S::Lists, K::Ber, 1, "cot9i with r = 1",
      [](auto& in, auto& m, auto&, auto& g) { return sum_products_plain_bound(in.as, in.bs, 1, m, g); }, sum_ab);
  add("cot9iv", S::Lists, K::Ber, 1, "cot9i with n = 2, r = 1",
      [](auto& in, auto& m, auto&, auto& g) {
        if (in.as.size() != 2) throw Error(ErrorCode::ListLengthMismatch, "cot9iv needs exactly two products");
        return sum_products_plain_bound(in.as, in.bs, 1, m, g);
      },
      [sum_ab](auto& in, auto& p) {
        if (in.as.size() != 2) throw Error(ErrorCode::ListLengthMismatch, "cot9iv needs exactly two products");
        return sum_ab(in, p);
      });
  add("cot10i", S::Lists, K::Ber, 0, "ber(A* X B) via ||X||^r ||(A*A + B*B)^r||_ber / 2^r",
      [](auto& in, auto& m, auto& p, auto& g) {
        if (in.xs.empty()) throw Error(ErrorCode::ListLengthMismatch, "cot10i needs X");
        return product_bound(first(in.as, "as"), first(in.bs, "bs"), in.xs.front(), p.r, m, g);
      },
      [](auto& in, auto&) {
        return CMatrix(first(in.as, "as").adjoint() * first(in.xs, "xs") * first(in.bs, "bs"));
      });
  add("cot10ii", S::Lists, K::Ber, 0, "ber(A* B) via ||(A*A + B*B)^r||_ber / 2^r",
      [](auto& in, auto& m, auto& p, auto& g) {
        return product_bound(first(in.as, "as"), first(in.bs, "bs"), std::nullopt, p.r, m, g);
      },
      [](auto& in, auto&) { return CMatrix(first(in.as, "as").adjoint() * first(in.bs, "bs")); });
  add("cot11i", S::PsdPair, K::Ber, 0, "ber(A^s X B^(1-s)) for positive A, B; s = params.t",
      [](auto& in, auto& m, auto& p, auto& g) {
        if (in.xs.empty()) throw Error(ErrorCode::ListLengthMismatch, "cot11i needs X");
        return weighted_product_bound(first(in.as, "as"), first(in.bs, "bs"), in.xs.front(), p.t, p.r, m, g);
      },
      [](auto& in, auto& p) {
        const CMatrix& a = first(in.as, "as");
        const CMatrix& b = first(in.bs, "bs");
        require_psd(a, "A");
        require_psd(b, "B");
        return CMatrix(psd_power(a, p.t) * first(in.xs, "xs") * psd_power(b, 1.0 - p.t));
      });
  add("cot11ii", S::PsdPair, K::Ber, 0, "ber(A^s B^(1-s)) for positive A, B; s = params.t",
      [](auto& in, auto& m, auto& p, auto& g) {
        return weighted_product_bound(first(in.as, "as"), first(in.bs, "bs"), std::nullopt, p.t, p.r, m, g);
      },
      [](auto& in, auto& p) {
        const CMatrix& a = first(in.as, "as");
        const CMatrix& b = first(in.bs, "bs");
        require_psd(a, "A");
        require_psd(b, "B");
        return CMatrix(psd_power(a, p.t) * psd_power(b, 1.0 - p.t));
      });
  add("cot11comm", S::PsdPair, K::BerNorm, 0, "||sqrt(AB)||_ber <= ||((A + B) / 2)^r||_ber^(1/r), AB = BA",
      [](auto& in, auto& m, auto& p, auto& g) {
        return commuting_mean_bound(first(in.as, "as"), first(in.bs, "bs"), p.r, m, g);
      },
      [](auto& in, auto&) {
        const CMatrix& a = first(in.as, "as");
        const CMatrix& b = first(in.bs, "bs");
        require_psd(a, "A");
        require_psd(b, "B");
        return sqrt_psd(hermitian_part(a * b));
      });
  add("ee1", S::Lists, K::Ber, 2, "baseline: ber^2(A1 + A2) <= sqrt(2) ber(|A1|^2 + |A2|^2 + i(|A1*|^2 + |A2*|^2))",
      [](auto& in, auto& m, auto&, auto& g) { return sum_baseline(first(in.as, "as"), second(in.as, "as"), m, g); },
      [](auto& in, auto&) { return CMatrix(first(in.as, "as") + second(in.as, "as")); });
  add("ee2", S::Lists, K::Ber, 0, "baseline: ber^r(A* B) via ber and c of |A|^2r +- |B|^2r",
      [](auto& in, auto& m, auto& p, auto& g) {
        return product_baseline(first(in.as, "as"), first(in.bs, "bs"), p.r, m, g);
      },
      [](auto& in, auto&) { return CMatrix(first(in.as, "as").adjoint() * first(in.bs, "bs")); });
  add("ee3", S::PsdPair, K::Ber, 4, "baseline: ber^4(A^(1/2) B^(1/2)) <= (||A^2 + B^2||_ber^2 - c^2(A^2 - B^2)) / 4",
      [](auto& in, auto& m, auto&, auto& g) {
        return psd_product_baseline(first(in.as, "as"), first(in.bs, "bs"), m, g);
      },
      [](auto& in, auto&) {
        const CMatrix& a = first(in.as, "as");
        const CMatrix& b = first(in.bs, "bs");
        require_psd(a, "A");
        require_psd(b, "B");
        return CMatrix(sqrt_psd(a) * sqrt_psd(b));
      });
  add("ee4", S::Single, K::Ber, 0, "baseline: ber^r(A) <= ber(|A|^r + |A*|^r) / 2",
      [](auto& in, auto& m, auto& p, auto& g) { return power_baseline(first(in.as, "as"), p.r, m, g); },
      lhs_single);
  add("th10", S::Single, K::Ber, 3, "ber^3(A), infimum over alpha, beta",
      [](auto& in, auto& m, auto& p, auto& g) {
        return cubic_bound(first(in.as, "as"), CubicVariant::Plain, p.search, m, g);
      },
      lhs_single);
  add("th10cor1", S::Single, K::Ber, 3, "th10 at alpha = beta = 2",
      [](auto& in, auto& m, auto&, auto& g) {
        return cubic_bound_fixed(first(in.as, "as"), CubicVariant::Plain, 2.0, 2.0, m, g);
      },
      lhs_single);
  add("th11i", S::Single, K::Ber, 3, "ber^3(A) via ber(A*|A*||A|), infimum over alpha, beta",
      [](auto& in, auto& m, auto& p, auto& g) {
        return cubic_bound(first(in.as, "as"), CubicVariant::AdjointAbs, p.search, m, g);
      },
      lhs_single);
  add("th11ii", S::Single, K::Ber, 3, "ber^3(A) via ber(A|A||A*|), infimum over alpha, beta",
      [](auto& in, auto& m, auto& p, auto& g) {
        return cubic_bound(first(in.as, "as"), CubicVariant::AbsAdjoint, p.search, m, g);
      },
      lhs_single);
  add("th11iii", S::Single, K::Ber, 4, "ber^4(A) via ber(|A*||A|) and ber(A^2)",
      [](auto& in, auto& m, auto&, auto& g) { return quartic_bound(first(in.as, "as"), QuarticVariant::AbsProduct, m, g); },
      lhs_single);
  add("th11iv", S::Single, K::Ber, 4, "ber^4(A) via ber(A|A|) and ber(A*|A*|)",
      [](auto& in, auto& m, auto&, auto& g) { return quartic_bound(first(in.as, "as"), QuarticVariant::ASquared, m, g); },
      lhs_single);
  add("T20", S::Single, K::Ber, 0, "ber^n(A) with n = params.n_power",
      [](auto& in, auto& m, auto& p, auto& g) { return power_bound(first(in.as, "as"), p.n_power, m, g); },
      lhs_single);
  return r;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = make_registry();
  return r;
}

const Entry& entry(std::string_view id) {
  for (const auto& e : registry()) {
    if (e.info.id == id) return e;
  }
  throw Error(ErrorCode::UnknownBound, "unknown bound id '" + std::string(id) + "'");
}

}  // namespace

const std::vector<BoundInfo>& bound_catalog() {
  static const std::vector<BoundInfo> infos = [] {
    std::vector<BoundInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

const BoundInfo& bound_info(std::string_view id) { return entry(id).info; }

bool is_known_bound(std::string_view id) {
  return std::any_of(registry().begin(), registry().end(), [&](const Entry& e) { return e.info.id == id; });
}

double bound_rhs(std::string_view id, const BoundInput& in, const RkhsModel& m, const BoundParams& params,
                 const GridSpec& grid) {
  return entry(id).rhs(in, m, params, grid);
}

CMatrix bound_lhs_operator(std::string_view id, const BoundInput& in, const RkhsModel&, const BoundParams& params) {
  return entry(id).lhs(in, params);
}

RkhsModel bound_lhs_model(std::string_view id, const BoundInput& in, const RkhsModel& m) {
  const BoundShape shape = entry(id).info.shape;
  switch (shape) {
    case BoundShape::Lists:
    case BoundShape::PsdPair:
    case BoundShape::Single:
      return m;
    default: break;
  }
  const std::size_t n = shape == BoundShape::Blocks ? in.blocks.n() : 2;
  if (n == 1 && !m.is_direct_sum()) return m;
  return RkhsModel::direct_sum(block_factors(m, n));
}

BerezinEstimate bound_lhs(std::string_view id, const BoundInput& in, const RkhsModel& m, const BoundParams& params,
                          const GridSpec& grid) {
  const Entry& e = entry(id);
  const CMatrix op = e.lhs(in, params);
  const RkhsModel lm = bound_lhs_model(id, in, m);
  return e.info.lhs == LhsKind::Ber ? berezin_number(op, lm, grid) : berezin_norm(op, lm, grid);
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::ViolatedBeyondTolerance: return "ViolatedBeyondTolerance";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

BoundReport evaluate_bound(std::string_view id, const BoundInput& in, const RkhsModel& m, const BoundParams& params,
                           const GridSpec& grid, const CheckTolerance& tol) {
  BoundReport rep;
  rep.bound_id = std::string(id);
  rep.params = params;
  rep.rhs = bound_rhs(id, in, m, params, grid);
  rep.lhs = bound_lhs(id, in, m, params, grid);
  rep.margin = rep.rhs - rep.lhs.value;
  const double scale = std::max(1.0, rep.rhs);
  if (m.is_finite()) {
    rep.tolerance = tol.relative * scale;
    rep.verdict = rep.margin >= -rep.tolerance ? Verdict::Holds : Verdict::ViolatedBeyondTolerance;
  } else {
    rep.tolerance = tol.grid_budget * scale;
    rep.verdict = rep.margin >= rep.tolerance ? Verdict::Holds : Verdict::Inconclusive;
  }
  return rep;
}

}  // namespace berezin
