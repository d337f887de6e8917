#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "berezin/linalg.hpp"

namespace berezin {

class RkhsModel;

/// Kernels are the standard basis vectors e_0 .. e_{dim-1}.
struct FiniteStandard {
  Eigen::Index dim = 0;
};

/// An explicit finite list of kernel vectors in C^n.
struct FiniteGeneral {
  std::vector<CVector> kernels;
};

/// H^2(D) truncated to the monomials 1, z, ..., z^{N-1}; points are
/// restricted to the closed disk |lambda| <= r_max.
struct HardyTruncated {
  Eigen::Index dim = 0;
  double r_max = 0.0;
};

/// Direct sum of factor spaces over the product point set. Kernel vectors are
/// concatenations of the factor kernels.
struct DirectSum {
  std::vector<RkhsModel> factors;
};

inline constexpr Eigen::Index default_hardy_dim = 400;
inline constexpr double default_hardy_r_max = 0.999;

class RkhsModel {
 public:
  using Variant = std::variant<FiniteStandard, FiniteGeneral, HardyTruncated, DirectSum>;

  static RkhsModel finite_standard(Eigen::Index dim);
  static RkhsModel finite_general(std::vector<CVector> kernels);
  static RkhsModel hardy(Eigen::Index dim = default_hardy_dim, double r_max = default_hardy_r_max);
  static RkhsModel direct_sum(std::vector<RkhsModel> factors);
  /// `count` copies of `factor`.
  static RkhsModel power(const RkhsModel& factor, std::size_t count);

  const Variant& variant() const noexcept { return value_; }
  bool is_direct_sum() const noexcept { return std::holds_alternative<DirectSum>(value_); }

  /// Ambient dimension of the (truncated) space.
  Eigen::Index dimension() const;
  /// True when the point set is finite, so every supremum is an exact maximum.
  bool is_finite() const;

  /// Depth-first list of the non-direct-sum factors; a plain model is its own
  /// single leaf.
  std::vector<const RkhsModel*> leaves() const;
  /// Immediate factors (a plain model returns a one-element list of itself).
  std::vector<RkhsModel> factors() const;

  std::string describe() const;

 private:
  explicit RkhsModel(Variant v) : value_(std::move(v)) {}
  Variant value_;
};

/// One coordinate per leaf factor: an index for finite leaves, a complex
/// number for Hardy leaves.
using LeafCoordinate = std::variant<std::size_t, Complex>;

struct RkhsPoint {
  std::vector<LeafCoordinate> coords;
};

RkhsPoint finite_point(std::size_t index);
RkhsPoint hardy_point(Complex lambda);
RkhsPoint product_point(std::vector<LeafCoordinate> coords);

/// Number of points of a finite leaf (dim for standard, list size for general).
std::size_t leaf_point_count(const RkhsModel& leaf);

/// Unnormalized kernel of a single (non-direct-sum) leaf.
CVector leaf_kernel(const RkhsModel& leaf, const LeafCoordinate& coord);

CVector kernel_vector(const RkhsModel& model, const RkhsPoint& point);
/// kernel_vector / ||kernel_vector||; direct sums are normalized as a whole.
CVector normalized_kernel(const RkhsModel& model, const RkhsPoint& point);

enum class HardyKind { Mz, Mz2, PConst, PMonomial };

/// Matrix of a named Hardy-space operator in the monomial basis.
CMatrix hardy_operator(HardyKind kind, Eigen::Index dim, Eigen::Index index = 0);
/// Multiplication by z^k.
CMatrix hardy_shift(Eigen::Index k, Eigen::Index dim);

}  // namespace berezin
