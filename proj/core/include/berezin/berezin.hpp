#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "berezin/linalg.hpp"
#include "berezin/rkhs.hpp"

namespace berezin {

/// Search resolution for models with Hardy factors. Finite factors are always
/// enumerated exhaustively.
///
/// Each Hardy coordinate is sampled on the polar grid
///   {0} u { r_max * i / radii * e^{2 pi i j / angles} : 1 <= i <= radii, 0 <= j < angles },
/// so doubling `radii` and `angles` yields a superset of the previous grid.
/// When the product of all coordinate grids exceeds `max_points`, radii and
/// angles are thinned by a common factor.
struct GridSpec {
  int radii = 64;
  int angles = 128;
  std::size_t max_points = 1'000'000;
  bool refine = true;
  double refine_tolerance = 1e-6;
  int refine_max_iterations = 200;
};

/// A supremum (or infimum) estimate together with the point(s) realizing it.
/// For sup-type quantities `value` is always attained at the witness, hence a
/// certified lower bound; `exact` is set only when the point set is finite.
struct BerezinEstimate {
  double value = 0.0;
  RkhsPoint witness;
  std::optional<RkhsPoint> witness_mu;
  bool exact = false;
  /// Berezin norm obtained as the Berezin number of a positive operator.
  bool via_positivity = false;
  int grid_radii = 0;
  int grid_angles = 0;
  std::size_t grid_points = 0;
  int refinement_iters = 0;
};

/// <A k^_lambda, k^_lambda>
Complex berezin_symbol(const CMatrix& a, const RkhsModel& m, const RkhsPoint& p);
/// <A k^_lambda, k^_mu> with lambda in the domain model and mu in the codomain model.
Complex berezin_pair(const CMatrix& a, const RkhsModel& domain, const RkhsPoint& lambda,
                     const RkhsModel& codomain, const RkhsPoint& mu);

BerezinEstimate berezin_number(const CMatrix& a, const RkhsModel& m, const GridSpec& grid = {});
BerezinEstimate berezin_norm(const CMatrix& a, const RkhsModel& m, const GridSpec& grid = {});
/// Berezin norm of an operator between two (possibly different) models.
BerezinEstimate berezin_norm(const CMatrix& a, const RkhsModel& domain, const RkhsModel& codomain,
                             const GridSpec& grid = {});
/// c(A) = inf |symbol|.
BerezinEstimate berezin_inf_c(const CMatrix& a, const RkhsModel& m, const GridSpec& grid = {});

std::string describe_point(const RkhsPoint& p);

}  // namespace berezin
