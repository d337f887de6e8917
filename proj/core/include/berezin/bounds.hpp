#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "berezin/berezin.hpp"
#include "berezin/block_matrix.hpp"
#include "berezin/linalg.hpp"
#include "berezin/rkhs.hpp"

namespace berezin {

// Every bound below returns a value that dominates the first power of its
// left-hand quantity: where an inequality controls ber^r, the r-th root of
// the right-hand side is returned.

/// f, g continuous on [0, inf) with f(t) g(t) = t.
struct SpectralPair {
  ScalarFunction f;
  ScalarFunction g;
  std::string name;
};

/// f(t) = t^s, g(t) = t^(1-s).
SpectralPair power_pair(double s);
/// f(t) = t / sqrt(1 + t), g(t) = sqrt(1 + t).
SpectralPair shifted_root_pair();

/// Search box for the alpha, beta infimum (positive reals on a log grid).
struct AlphaBetaSearch {
  double lo = 1.0;
  double hi = 64.0;
  int points = 64;
  bool polish = true;
};

struct BoundParams {
  double t = 0.5;
  Complex alpha{2.0, 0.0};
  Complex beta{2.0, 0.0};
  int r = 1;
  int n_power = 2;
  std::optional<SpectralPair> fg;
  AlphaBetaSearch search;
};

/// Operator data for a bound: block layouts use `blocks`, sums of products
/// use the three lists, single-operator bounds read `as[0]`.
struct BoundInput {
  BlockMatrix blocks;
  std::vector<CMatrix> as;
  std::vector<CMatrix> bs;
  std::vector<CMatrix> xs;

  static BoundInput from_blocks(BlockMatrix b);
  static BoundInput single(CMatrix a);
  static BoundInput lists(std::vector<CMatrix> as, std::vector<CMatrix> bs = {}, std::vector<CMatrix> xs = {});
};

/// How a bound reads its BoundInput.
enum class BoundShape {
  Blocks,         // n x n block matrix
  TwoByTwo,       // [[A, B], [C, D]]
  Diagonal,       // diag(b00, b11)
  OffDiagonal,    // [[0, b01], [b10, 0]]
  OffSymmetric,   // [[0, b01], [b01, 0]]
  SymmetricFull,  // [[b00, b01], [b01, b00]]
  Lists,          // as / bs / xs
  PsdPair,        // as[0], bs[0] positive (xs[0] optional)
  Single,         // as[0]
};

/// Which quantity of which operator the bound dominates.
enum class LhsKind { Ber, BerNorm };

struct BoundInfo {
  std::string id;
  BoundShape shape;
  LhsKind lhs;
  /// Power of the left side in the original inequality (the returned value is
  /// its root).
  int power;
  std::string description;
};

const std::vector<BoundInfo>& bound_catalog();
const BoundInfo& bound_info(std::string_view id);
bool is_known_bound(std::string_view id);

/// Block-model helper: the factor models hosting each block index. A direct
/// sum with `n` factors gives its factors; any other model is repeated n times.
std::vector<RkhsModel> block_factors(const RkhsModel& m, std::size_t n);

// Individual bounds. `m` is the model of the whole space for block bounds (see
// block_factors) and the model of H for single-operator bounds.
double block_bound(const BlockMatrix& blocks, const SpectralPair& fg, const RkhsModel& m, const GridSpec& grid = {});
double two_by_two_bound(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid = {});
double two_by_two_norm_baseline(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid = {});
double two_by_two_radius_baseline(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid = {});
double block_bernorm_bound(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid = {});
/// Entrywise Berezin-norm matrix [||A_ij||_ber].
RMatrix block_bernorm_matrix(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid = {});
double diagonal_bernorm_bound(const CMatrix& a, const CMatrix& d, const RkhsModel& m, const GridSpec& grid = {});
double diagonal_ber_baseline(const CMatrix& a, const CMatrix& d, const RkhsModel& m, const GridSpec& grid = {});
double offdiag_bernorm_bound(const CMatrix& b, const CMatrix& c, const RkhsModel& m, const GridSpec& grid = {});
double offdiag_opnorm_baseline(const CMatrix& b, const CMatrix& c);
double offdiag_alpha_bound(const CMatrix& a, const CMatrix& b, Complex alpha, const RkhsModel& m,
                           const GridSpec& grid = {});
double offdiag_limit_bound(const CMatrix& a, const CMatrix& b, const RkhsModel& m, const GridSpec& grid = {});
double offdiag_symmetric_alpha_bound(const CMatrix& a, Complex alpha, const RkhsModel& m, const GridSpec& grid = {});
double offdiag_symmetric_limit_bound(const CMatrix& a, const RkhsModel& m, const GridSpec& grid = {});
double full_alpha_bound(const BlockMatrix& blocks, Complex alpha, const RkhsModel& m, const GridSpec& grid = {});
double full_limit_bound(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid = {});
double symmetric_full_bound(const CMatrix& a, const CMatrix& b, const RkhsModel& m, const GridSpec& grid = {});
double symmetric_full_baseline(const CMatrix& a, const CMatrix& b, const RkhsModel& m, const GridSpec& grid = {});
double full_bernorm_bound(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid = {});
double full_ber_baseline(const BlockMatrix& blocks, const RkhsModel& m, const GridSpec& grid = {});

double sum_products_bound(const std::vector<CMatrix>& as, const std::vector<CMatrix>& bs,
                          const std::vector<CMatrix>& xs, int r, const RkhsModel& m, const GridSpec& grid = {});
/// ber(sum A_i B_i) via X_i = I and A_i -> A_i*.
double sum_products_plain_bound(const std::vector<CMatrix>& as, const std::vector<CMatrix>& bs, int r,
                                const RkhsModel& m, const GridSpec& grid = {});
/// ber(sum A_i).
double sum_bound(const std::vector<CMatrix>& as, int r, const RkhsModel& m, const GridSpec& grid = {});
/// ber(A* X B); `x` empty means the identity.
double product_bound(const CMatrix& a, const CMatrix& b, const std::optional<CMatrix>& x, int r,
                     const RkhsModel& m, const GridSpec& grid = {});
/// ber(A^s X B^(1-s)) for positive A, B; `x` empty means the identity.
double weighted_product_bound(const CMatrix& a, const CMatrix& b, const std::optional<CMatrix>& x, double s, int r,
                              const RkhsModel& m, const GridSpec& grid = {});
/// ||sqrt(AB)||_ber for commuting positive A, B.
double commuting_mean_bound(const CMatrix& a, const CMatrix& b, int r, const RkhsModel& m, const GridSpec& grid = {});

double sum_baseline(const CMatrix& a1, const CMatrix& a2, const RkhsModel& m, const GridSpec& grid = {});
double product_baseline(const CMatrix& a, const CMatrix& b, int r, const RkhsModel& m, const GridSpec& grid = {});
/// Positive-pair baseline in its scale-consistent squared form (see README).
double psd_product_baseline(const CMatrix& a, const CMatrix& b, const RkhsModel& m, const GridSpec& grid = {});
/// The same baseline with the Berezin norm left unsquared, exactly as it is
/// usually printed; kept for the comparison report only.
double psd_product_baseline_literal(const CMatrix& a, const CMatrix& b, const RkhsModel& m, const GridSpec& grid = {});
double power_baseline(const CMatrix& a, int r, const RkhsModel& m, const GridSpec& grid = {});

/// Ingredients of the cubic bounds; the alpha/beta-dependent right side is
/// ber3 / (|a||b|) + (max{1,|b-1|} / (|a||b|) * mixed + max{1,|a-1|} / (2|a|) * sum) * outer.
struct CubicTerms {
  double ber3 = 0.0;
  double mixed = 0.0;
  double sum = 0.0;
  double outer = 0.0;

  double rhs(double alpha, double beta) const;
};

enum class CubicVariant { Plain, AdjointAbs, AbsAdjoint };

CubicTerms cubic_terms(const CMatrix& a, CubicVariant variant, const RkhsModel& m, const GridSpec& grid = {});

struct AlphaBetaMinimum {
  double value = 0.0;  // minimized right side (third power)
  double alpha = 2.0;
  double beta = 2.0;
};

AlphaBetaMinimum minimize_alpha_beta(const CubicTerms& terms, const AlphaBetaSearch& search);

double cubic_bound(const CMatrix& a, CubicVariant variant, const AlphaBetaSearch& search, const RkhsModel& m,
                   const GridSpec& grid = {});
double cubic_bound_fixed(const CMatrix& a, CubicVariant variant, double alpha, double beta, const RkhsModel& m,
                         const GridSpec& grid = {});

enum class QuarticVariant { AbsProduct, ASquared };
double quartic_bound(const CMatrix& a, QuarticVariant variant, const RkhsModel& m, const GridSpec& grid = {});
double power_bound(const CMatrix& a, int n, const RkhsModel& m, const GridSpec& grid = {});

/// Right side of bound `id`, first-power normalized.
double bound_rhs(std::string_view id, const BoundInput& in, const RkhsModel& m, const BoundParams& params,
                 const GridSpec& grid = {});
/// The operator whose Berezin number (or norm) the bound controls, assembled
/// from `in`, and the model it lives on.
CMatrix bound_lhs_operator(std::string_view id, const BoundInput& in, const RkhsModel& m, const BoundParams& params);
RkhsModel bound_lhs_model(std::string_view id, const BoundInput& in, const RkhsModel& m);
BerezinEstimate bound_lhs(std::string_view id, const BoundInput& in, const RkhsModel& m, const BoundParams& params,
                          const GridSpec& grid = {});

enum class Verdict { Holds, ViolatedBeyondTolerance, Inconclusive };
std::string_view to_string(Verdict v) noexcept;

struct BoundReport {
  std::string bound_id;
  double rhs = 0.0;
  BerezinEstimate lhs;
  BoundParams params;
  double margin = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Holds;
};

struct CheckTolerance {
  /// Violation threshold on exact models, relative to max(1, rhs).
  double relative = 1e-9;
  /// Margin below which a non-exact (grid) evaluation is reported
  /// Inconclusive, relative to max(1, rhs).
  double grid_budget = 5e-3;
};

BoundReport evaluate_bound(std::string_view id, const BoundInput& in, const RkhsModel& m, const BoundParams& params,
                           const GridSpec& grid = {}, const CheckTolerance& tol = {});

}  // namespace berezin
