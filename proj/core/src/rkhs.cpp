#include "berezin/rkhs.hpp"

#include <cmath>
#include <sstream>

#include "berezin/error.hpp"

namespace berezin {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void collect_leaves(const RkhsModel& m, std::vector<const RkhsModel*>& out) {
  if (const auto* ds = std::get_if<DirectSum>(&m.variant())) {
    for (const auto& f : ds->factors) collect_leaves(f, out);
  } else {
    out.push_back(&m);
  }
}

}  // namespace

RkhsModel RkhsModel::finite_standard(Eigen::Index dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidModel, "finite standard model needs dim >= 1");
  return RkhsModel(FiniteStandard{dim});
}

RkhsModel RkhsModel::finite_general(std::vector<CVector> kernels) {
  if (kernels.empty()) throw Error(ErrorCode::InvalidModel, "finite general model needs at least one kernel");
  const Eigen::Index n = kernels.front().size();
  if (n < 1) throw Error(ErrorCode::InvalidModel, "kernel vectors must be nonempty");
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    if (kernels[i].size() != n) throw Error(ErrorCode::InvalidModel, "kernel vectors differ in dimension");
    if (!kernels[i].allFinite()) throw Error(ErrorCode::InvalidModel, "kernel vector has non-finite entries");
    if (kernels[i].norm() <= 0.0) {
      throw Error(ErrorCode::InvalidModel, "kernel vector " + std::to_string(i) + " has zero norm");
    }
  }
  return RkhsModel(FiniteGeneral{std::move(kernels)});
}

RkhsModel RkhsModel::hardy(Eigen::Index dim, double r_max) {
  if (dim < 2) throw Error(ErrorCode::InvalidModel, "Hardy truncation needs N >= 2");
  if (!(r_max > 0.0 && r_max < 1.0)) throw Error(ErrorCode::InvalidModel, "Hardy r_max must lie in (0, 1)");
  return RkhsModel(HardyTruncated{dim, r_max});
}

RkhsModel RkhsModel::direct_sum(std::vector<RkhsModel> factors) {
  if (factors.empty()) throw Error(ErrorCode::InvalidModel, "direct sum needs at least one factor");
  return RkhsModel(DirectSum{std::move(factors)});
}

RkhsModel RkhsModel::power(const RkhsModel& factor, std::size_t count) {
  return direct_sum(std::vector<RkhsModel>(count, factor));
}

Eigen::Index RkhsModel::dimension() const {
  return std::visit(overloaded{
                        [](const FiniteStandard& m) { return m.dim; },
                        [](const FiniteGeneral& m) { return m.kernels.front().size(); },
                        [](const HardyTruncated& m) { return m.dim; },
                        [](const DirectSum& m) {
                          Eigen::Index total = 0;
                          for (const auto& f : m.factors) total += f.dimension();
                          return total;
                        },
                    },
                    value_);
}

bool RkhsModel::is_finite() const {
  for (const auto* leaf : leaves()) {
    if (std::holds_alternative<HardyTruncated>(leaf->variant())) return false;
  }
  return true;
}

std::vector<const RkhsModel*> RkhsModel::leaves() const {
  std::vector<const RkhsModel*> out;
  collect_leaves(*this, out);
  return out;
}

std::vector<RkhsModel> RkhsModel::factors() const {
  if (const auto* ds = std::get_if<DirectSum>(&value_)) return ds->factors;
  return {*this};
}

std::string RkhsModel::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const FiniteStandard& m) { os << "FiniteStandard(" << m.dim << ")"; },
                 [&](const FiniteGeneral& m) {
                   os << "FiniteGeneral(" << m.kernels.size() << " kernels in C^" << m.kernels.front().size()
                      << ")";
                 },
                 [&](const HardyTruncated& m) { os << "HardyTruncated(N=" << m.dim << ", r_max=" << m.r_max << ")"; },
                 [&](const DirectSum& m) {
                   os << "DirectSum(";
                   for (std::size_t i = 0; i < m.factors.size(); ++i) os << (i ? ", " : "") << m.factors[i].describe();
                   os << ")";
                 },
             },
             value_);
  return os.str();
}

RkhsPoint finite_point(std::size_t index) { return RkhsPoint{{LeafCoordinate{index}}}; }
RkhsPoint hardy_point(Complex lambda) { return RkhsPoint{{LeafCoordinate{lambda}}}; }
RkhsPoint product_point(std::vector<LeafCoordinate> coords) { return RkhsPoint{std::move(coords)}; }

std::size_t leaf_point_count(const RkhsModel& leaf) {
  if (const auto* fs = std::get_if<FiniteStandard>(&leaf.variant())) return static_cast<std::size_t>(fs->dim);
  if (const auto* fg = std::get_if<FiniteGeneral>(&leaf.variant())) return fg->kernels.size();
  throw Error(ErrorCode::InvalidModel, "leaf " + leaf.describe() + " has no finite point set");
}

CVector leaf_kernel(const RkhsModel& leaf, const LeafCoordinate& coord) {
  return std::visit(
      overloaded{
          [&](const FiniteStandard& m) -> CVector {
            const auto* idx = std::get_if<std::size_t>(&coord);
            if (idx == nullptr || *idx >= static_cast<std::size_t>(m.dim)) {
              throw Error(ErrorCode::PointOutOfDomain, "index outside " + leaf.describe());
            }
            CVector k = CVector::Zero(m.dim);
            k(static_cast<Eigen::Index>(*idx)) = 1.0;
            return k;
          },
          [&](const FiniteGeneral& m) -> CVector {
            const auto* idx = std::get_if<std::size_t>(&coord);
            if (idx == nullptr || *idx >= m.kernels.size()) {
              throw Error(ErrorCode::PointOutOfDomain, "index outside " + leaf.describe());
            }
            return m.kernels[*idx];
          },
          [&](const HardyTruncated& m) -> CVector {
            const auto* lambda = std::get_if<Complex>(&coord);
            if (lambda == nullptr || !(std::abs(*lambda) <= m.r_max * (1.0 + 1e-12))) {
              throw Error(ErrorCode::PointOutOfDomain, "point outside the closed disk of " + leaf.describe());
            }
            CVector k(m.dim);
            const Complex step = std::conj(*lambda);
            Complex power = 1.0;
            for (Eigen::Index n = 0; n < m.dim; ++n) {
              k(n) = power;
              power *= step;
            }
            return k;
          },
          [&](const DirectSum&) -> CVector {
            throw Error(ErrorCode::InvalidModel, "leaf_kernel called on a direct sum");
          },
      },
      leaf.variant());
}

CVector kernel_vector(const RkhsModel& model, const RkhsPoint& point) {
  const auto leaves = model.leaves();
  if (point.coords.size() != leaves.size()) {
    throw Error(ErrorCode::PointOutOfDomain, "point has " + std::to_string(point.coords.size()) +
                                                 " coordinates, model has " + std::to_string(leaves.size()) +
                                                 " factors");
  }
  CVector out(model.dimension());
  Eigen::Index offset = 0;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const CVector k = leaf_kernel(*leaves[i], point.coords[i]);
    out.segment(offset, k.size()) = k;
    offset += k.size();
  }
  return out;
}

CVector normalized_kernel(const RkhsModel& model, const RkhsPoint& point) {
  const CVector k = kernel_vector(model, point);
  const double n = k.norm();
  if (!(n > 0.0)) throw Error(ErrorCode::ZeroKernel, "kernel vector has zero norm");
  return k / n;
}

CMatrix hardy_shift(Eigen::Index k, Eigen::Index dim) {
  if (dim < 1 || k < 0) throw Error(ErrorCode::IndexOutOfRange, "invalid Hardy shift");
  CMatrix m = CMatrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j + k < dim; ++j) m(j + k, j) = 1.0;
  return m;
}

CMatrix hardy_operator(HardyKind kind, Eigen::Index dim, Eigen::Index index) {
  if (dim < 1) throw Error(ErrorCode::IndexOutOfRange, "Hardy operator needs N >= 1");
  switch (kind) {
    case HardyKind::Mz: return hardy_shift(1, dim);
    case HardyKind::Mz2: return hardy_shift(2, dim);
    case HardyKind::PConst: index = 0; [[fallthrough]];
    case HardyKind::PMonomial: {
      if (index < 0 || index >= dim) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "monomial index " + std::to_string(index) + " outside truncation " + std::to_string(dim));
      }
      CMatrix m = CMatrix::Zero(dim, dim);
      m(index, index) = 1.0;
      return m;
    }
  }
  throw Error(ErrorCode::IndexOutOfRange, "unknown Hardy operator");
}

}  // namespace berezin
