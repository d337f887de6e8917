#include "berezin/berezin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/SparseCore>

#include "berezin/error.hpp"
#include "berezin/optimize.hpp"

namespace berezin {

namespace {

enum class Sense { Max, Min };

bool better(Sense s, double candidate, double incumbent) {
  return s == Sense::Max ? candidate > incumbent : candidate < incumbent;
}

// A block of the operator, multiplied either densely or through a sparse copy
// when most entries vanish (the named Hardy operators are all very sparse).
class OpBlock {
 public:
  explicit OpBlock(const CMatrix& m) : dense_(m) {
    Eigen::Index nnz = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        if (m(i, j) != Complex(0.0)) {
          ++nnz;
          if (std::find(rows_.begin(), rows_.end(), i) == rows_.end()) rows_.push_back(i);
        }
      }
    }
    std::sort(rows_.begin(), rows_.end());
    zero_ = nnz == 0;
    if (!zero_ && nnz * 8 < m.size()) sparse_ = m.sparseView();
  }

  bool zero() const noexcept { return zero_; }
  bool sparse() const noexcept { return sparse_.nonZeros() > 0; }
  const std::vector<Eigen::Index>& nonzero_rows() const noexcept { return rows_; }

  CMatrix apply(const CMatrix& k) const {
    if (sparse()) return sparse_ * k;
    return dense_ * k;
  }
  CVector apply(const CVector& k) const {
    if (sparse()) return sparse_ * k;
    return dense_ * k;
  }

 private:
  CMatrix dense_;
  Eigen::SparseMatrix<Complex> sparse_;
  std::vector<Eigen::Index> rows_;
  bool zero_ = true;
};

// Candidate points of one leaf factor and their (unnormalized) kernels.
struct LeafGrid {
  const RkhsModel* leaf = nullptr;
  Eigen::Index offset = 0;
  Eigen::Index dim = 0;
  bool hardy = false;
  double r_max = 0.0;
  std::vector<LeafCoordinate> points;
  CMatrix kernels;  // dim x G
  RVector sq_norms;
};

struct GridPlan {
  int radii = 0;
  int angles = 0;
  std::size_t total = 1;
};

std::size_t hardy_grid_size(int radii, int angles) {
  return 1 + static_cast<std::size_t>(radii) * static_cast<std::size_t>(angles);
}

double safe_pow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

GridPlan plan_grid(int hardy_coords, std::size_t finite_product, const GridSpec& spec) {
  GridPlan plan{spec.radii, spec.angles, finite_product};
  if (spec.radii < 1 || spec.angles < 1) throw Error(ErrorCode::BadParameter, "grid needs radii >= 1 and angles >= 1");
  if (hardy_coords == 0) return plan;
  auto total_for = [&](int r, int a) {
    return static_cast<double>(finite_product) * safe_pow(static_cast<double>(hardy_grid_size(r, a)), hardy_coords);
  };
  const double cap = static_cast<double>(spec.max_points);
  if (total_for(plan.radii, plan.angles) > cap) {
    const double per_coord = std::pow(cap / static_cast<double>(finite_product), 1.0 / hardy_coords);
    const double s = std::sqrt(std::max(per_coord - 1.0, 1.0) / (static_cast<double>(spec.radii) * spec.angles));
    plan.radii = std::max(1, static_cast<int>(std::floor(spec.radii * s)));
    plan.angles = std::max(1, static_cast<int>(std::floor(spec.angles * s)));
    while (total_for(plan.radii, plan.angles) > cap && (plan.radii > 1 || plan.angles > 1)) {
      if (plan.angles > 2 * plan.radii || plan.radii == 1) {
        --plan.angles;
      } else {
        --plan.radii;
      }
    }
  }
  plan.total = static_cast<std::size_t>(total_for(plan.radii, plan.angles));
  return plan;
}

std::vector<LeafGrid> build_grids(const RkhsModel& m, const GridPlan& plan) {
  std::vector<LeafGrid> grids;
  Eigen::Index offset = 0;
  for (const RkhsModel* leaf : m.leaves()) {
    LeafGrid g;
    g.leaf = leaf;
    g.offset = offset;
    g.dim = leaf->dimension();
    offset += g.dim;
    if (const auto* h = std::get_if<HardyTruncated>(&leaf->variant())) {
      g.hardy = true;
      g.r_max = h->r_max;
      g.points.emplace_back(Complex(0.0));
      for (int i = 1; i <= plan.radii; ++i) {
        const double r = h->r_max * static_cast<double>(i) / plan.radii;
        for (int j = 0; j < plan.angles; ++j) {
          g.points.emplace_back(std::polar(r, 2.0 * std::numbers::pi * j / plan.angles));
        }
      }
    } else {
      const std::size_t n = leaf_point_count(*leaf);
      for (std::size_t i = 0; i < n; ++i) g.points.emplace_back(i);
    }
    g.kernels.resize(g.dim, static_cast<Eigen::Index>(g.points.size()));
    for (std::size_t p = 0; p < g.points.size(); ++p) {
      g.kernels.col(static_cast<Eigen::Index>(p)) = leaf_kernel(*leaf, g.points[p]);
    }
    g.sq_norms = g.kernels.colwise().squaredNorm().transpose();
    grids.push_back(std::move(g));
  }
  return grids;
}

std::pair<int, std::size_t> hardy_and_finite_counts(const RkhsModel& m) {
  int hardy = 0;
  std::size_t finite = 1;
  for (const RkhsModel* leaf : m.leaves()) {
    if (std::holds_alternative<HardyTruncated>(leaf->variant())) {
      ++hardy;
    } else {
      finite *= leaf_point_count(*leaf);
    }
  }
  return {hardy, finite};
}

void require_operator_on(const CMatrix& a, const RkhsModel& domain, const RkhsModel& codomain) {
  if (a.cols() != domain.dimension() || a.rows() != codomain.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "operator is " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + ", model spaces have dimensions " +
                                                  std::to_string(codomain.dimension()) + " and " +
                                                  std::to_string(domain.dimension()));
  }
  require_finite(a, "operator");
}

// Mixed-radix decode, first factor most significant (lexicographic order).
void decode(std::size_t flat, const std::vector<std::size_t>& radix, std::vector<std::size_t>& out) {
  for (std::size_t k = radix.size(); k-- > 0;) {
    out[k] = flat % radix[k];
    flat /= radix[k];
  }
}

RkhsPoint make_point(const std::vector<LeafGrid>& grids, const std::vector<std::size_t>& idx) {
  RkhsPoint p;
  for (std::size_t k = 0; k < grids.size(); ++k) p.coords.push_back(grids[k].points[idx[k]]);
  return p;
}

// Direct evaluation helpers used for refinement and for re-checking witnesses.
double symbol_modulus(const OpBlock& op, const RkhsModel& m, const RkhsPoint& p) {
  const CVector k = kernel_vector(m, p);
  const double sq = k.squaredNorm();
  if (!(sq > 0.0)) throw Error(ErrorCode::ZeroKernel, "kernel vector has zero norm");
  return std::abs(k.dot(op.apply(k))) / sq;
}

double pair_modulus(const OpBlock& op, const RkhsModel& domain, const RkhsPoint& lambda, const RkhsModel& codomain,
                    const RkhsPoint& mu) {
  const CVector kl = kernel_vector(domain, lambda);
  const CVector km = kernel_vector(codomain, mu);
  const double d = kl.norm() * km.norm();
  if (!(d > 0.0)) throw Error(ErrorCode::ZeroKernel, "kernel vector has zero norm");
  return std::abs(km.dot(op.apply(kl))) / d;
}

// Coordinate-wise golden-section polish over the polar coordinates of every
// Hardy leaf. `points` holds one or two tuples (lambda and, for norms, mu).
template <typename Objective>
int refine_polar(Objective&& objective, std::vector<RkhsPoint*> points,
                 const std::vector<std::vector<const LeafGrid*>>& grids, const GridPlan& plan, const GridSpec& spec,
                 Sense sense, double& value) {
  struct Coord {
    RkhsPoint* point;
    std::size_t leaf;
    double r_max;
  };
  std::vector<Coord> coords;
  for (std::size_t t = 0; t < points.size(); ++t) {
    for (std::size_t k = 0; k < grids[t].size(); ++k) {
      if (grids[t][k]->hardy) coords.push_back({points[t], k, grids[t][k]->r_max});
    }
  }
  if (coords.empty()) return 0;

  const double dr = coords.front().r_max / plan.radii;
  const double dtheta = 2.0 * std::numbers::pi / plan.angles;
  const double sign = sense == Sense::Max ? 1.0 : -1.0;

  int sweep = 0;
  for (; sweep < spec.refine_max_iterations; ++sweep) {
    const double before = value;
    for (const Coord& c : coords) {
      Complex& z = std::get<Complex>(c.point->coords[c.leaf]);
      const Complex saved = z;
      const double r0 = std::abs(z);
      const double t0 = std::arg(z);

      auto along_r = [&](double r) {
        z = std::polar(r, t0);
        return sign * objective();
      };
      LineMaximum lr = golden_section_maximize(along_r, std::max(0.0, r0 - dr), std::min(c.r_max, r0 + dr),
                                               spec.refine_tolerance);
      if (sign * lr.value > sign * value) {
        z = std::polar(lr.x, t0);
        value = sign * lr.value;
      } else {
        z = saved;
      }

      const Complex saved2 = z;
      const double r1 = std::abs(z);
      if (r1 > 0.0) {
        const double t1 = std::arg(z);
        auto along_t = [&](double t) {
          z = std::polar(r1, t);
          return sign * objective();
        };
        LineMaximum lt = golden_section_maximize(along_t, t1 - dtheta, t1 + dtheta, spec.refine_tolerance);
        if (sign * lt.value > sign * value) {
          z = std::polar(r1, lt.x);
          value = sign * lt.value;
        } else {
          z = saved2;
        }
      }
    }
    if (!(std::abs(value - before) > 1e-15 * std::max(1.0, std::abs(value)))) {
      ++sweep;
      break;
    }
  }
  return sweep;
}

BerezinEstimate diagonal_search(const CMatrix& a, const RkhsModel& m, const GridSpec& spec, Sense sense) {
  require_operator_on(a, m, m);
  const auto [hardy, finite] = hardy_and_finite_counts(m);
  const GridPlan plan = plan_grid(hardy, finite, spec);
  const std::vector<LeafGrid> grids = build_grids(m, plan);
  const std::size_t k = grids.size();

  // Diagonal contributions k_p* A_aa k_p and cross terms k_p* A_ab k_q.
  std::vector<CVector> diag(k);
  std::vector<std::vector<CMatrix>> cross(k, std::vector<CMatrix>(k));
  std::vector<std::vector<bool>> has_cross(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const OpBlock block(a.block(grids[i].offset, grids[j].offset, grids[i].dim, grids[j].dim));
      if (block.zero()) {
        if (i == j) diag[i] = CVector::Zero(grids[i].kernels.cols());
        continue;
      }
      const CMatrix ak = block.apply(grids[j].kernels);
      if (i == j) {
        diag[i] = grids[i].kernels.cwiseProduct(ak.conjugate()).colwise().sum().conjugate().transpose();
      } else {
        const auto& rows = block.nonzero_rows();
        CMatrix left(static_cast<Eigen::Index>(rows.size()), grids[i].kernels.cols());
        CMatrix right(static_cast<Eigen::Index>(rows.size()), ak.cols());
        for (std::size_t r = 0; r < rows.size(); ++r) {
          left.row(static_cast<Eigen::Index>(r)) = grids[i].kernels.row(rows[r]);
          right.row(static_cast<Eigen::Index>(r)) = ak.row(rows[r]);
        }
        cross[i][j] = left.adjoint() * right;
        has_cross[i][j] = true;
      }
    }
  }

  std::vector<std::size_t> radix(k);
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    radix[i] = grids[i].points.size();
    total *= radix[i];
  }

  std::vector<std::size_t> idx(k, 0);
  std::vector<std::size_t> best_idx(k, 0);
  double best = sense == Sense::Max ? -1.0 : std::numeric_limits<double>::infinity();
  for (std::size_t flat = 0; flat < total; ++flat) {
    decode(flat, radix, idx);
    Complex num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const auto p = static_cast<Eigen::Index>(idx[i]);
      num += diag[i](p);
      den += grids[i].sq_norms(p);
      for (std::size_t j = 0; j < k; ++j) {
        if (has_cross[i][j]) num += cross[i][j](p, static_cast<Eigen::Index>(idx[j]));
      }
    }
    const double v = std::abs(num) / den;
    if (better(sense, v, best)) {
      best = v;
      best_idx = idx;
    }
  }

  BerezinEstimate est;
  est.witness = make_point(grids, best_idx);
  est.exact = hardy == 0;
  est.grid_radii = hardy > 0 ? plan.radii : 0;
  est.grid_angles = hardy > 0 ? plan.angles : 0;
  est.grid_points = total;

  const OpBlock op(a);
  double value = symbol_modulus(op, m, est.witness);
  if (hardy > 0 && spec.refine) {
    std::vector<const LeafGrid*> leaf_ptrs;
    for (const auto& g : grids) leaf_ptrs.push_back(&g);
    est.refinement_iters = refine_polar([&] { return symbol_modulus(op, m, est.witness); }, {&est.witness},
                                        {leaf_ptrs}, plan, spec, sense, value);
    value = symbol_modulus(op, m, est.witness);
  }
  est.value = value;
  return est;
}

BerezinEstimate pair_search(const CMatrix& a, const RkhsModel& domain, const RkhsModel& codomain,
                            const GridSpec& spec) {
  require_operator_on(a, domain, codomain);
  const auto [hd, fd] = hardy_and_finite_counts(domain);
  const auto [hc, fc] = hardy_and_finite_counts(codomain);
  const GridPlan plan = plan_grid(hd + hc, fd * fc, spec);
  const std::vector<LeafGrid> dgrids = build_grids(domain, plan);
  const std::vector<LeafGrid> cgrids = build_grids(codomain, plan);
  const std::size_t kd = dgrids.size();
  const std::size_t kc = cgrids.size();

  // cross[i][j](q, p) = k_q* A_ij k_p with q a codomain-leaf point, p a domain-leaf point.
  std::vector<std::vector<CMatrix>> cross(kc, std::vector<CMatrix>(kd));
  std::vector<std::vector<bool>> has(kc, std::vector<bool>(kd, false));
  for (std::size_t i = 0; i < kc; ++i) {
    for (std::size_t j = 0; j < kd; ++j) {
      const OpBlock block(a.block(cgrids[i].offset, dgrids[j].offset, cgrids[i].dim, dgrids[j].dim));
      if (block.zero()) continue;
      const CMatrix ak = block.apply(dgrids[j].kernels);
      const auto& rows = block.nonzero_rows();
      CMatrix left(static_cast<Eigen::Index>(rows.size()), cgrids[i].kernels.cols());
      CMatrix right(static_cast<Eigen::Index>(rows.size()), ak.cols());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        left.row(static_cast<Eigen::Index>(r)) = cgrids[i].kernels.row(rows[r]);
        right.row(static_cast<Eigen::Index>(r)) = ak.row(rows[r]);
      }
      cross[i][j] = left.adjoint() * right;
      has[i][j] = true;
    }
  }

  std::vector<std::size_t> dradix(kd);
  std::vector<std::size_t> cradix(kc);
  std::size_t dtotal = 1;
  std::size_t ctotal = 1;
  for (std::size_t j = 0; j < kd; ++j) dtotal *= (dradix[j] = dgrids[j].points.size());
  for (std::size_t i = 0; i < kc; ++i) ctotal *= (cradix[i] = cgrids[i].points.size());

  // Precompute norms of every tuple.
  std::vector<double> dnorm(dtotal);
  std::vector<double> cnorm(ctotal);
  std::vector<std::size_t> didx(kd);
  std::vector<std::size_t> cidx(kc);
  for (std::size_t f = 0; f < dtotal; ++f) {
    decode(f, dradix, didx);
    double s = 0.0;
    for (std::size_t j = 0; j < kd; ++j) s += dgrids[j].sq_norms(static_cast<Eigen::Index>(didx[j]));
    dnorm[f] = std::sqrt(s);
  }
  for (std::size_t f = 0; f < ctotal; ++f) {
    decode(f, cradix, cidx);
    double s = 0.0;
    for (std::size_t i = 0; i < kc; ++i) s += cgrids[i].sq_norms(static_cast<Eigen::Index>(cidx[i]));
    cnorm[f] = std::sqrt(s);
  }

  double best = -1.0;
  std::vector<std::size_t> best_d(kd, 0);
  std::vector<std::size_t> best_c(kc, 0);
  if (kd == 1 && kc == 1) {
    if (has[0][0]) {
      const CMatrix& m = cross[0][0];
      for (std::size_t p = 0; p < dtotal; ++p) {
        for (std::size_t q = 0; q < ctotal; ++q) {
          const double v = std::abs(m(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(p))) / (dnorm[p] * cnorm[q]);
          if (v > best) {
            best = v;
            best_d[0] = p;
            best_c[0] = q;
          }
        }
      }
    } else {
      best = 0.0;
    }
  } else {
    for (std::size_t fd2 = 0; fd2 < dtotal; ++fd2) {
      decode(fd2, dradix, didx);
      for (std::size_t fc2 = 0; fc2 < ctotal; ++fc2) {
        decode(fc2, cradix, cidx);
        Complex num = 0.0;
        for (std::size_t i = 0; i < kc; ++i) {
          for (std::size_t j = 0; j < kd; ++j) {
            if (has[i][j]) num += cross[i][j](static_cast<Eigen::Index>(cidx[i]), static_cast<Eigen::Index>(didx[j]));
          }
        }
        const double v = std::abs(num) / (dnorm[fd2] * cnorm[fc2]);
        if (v > best) {
          best = v;
          best_d = didx;
          best_c = cidx;
        }
      }
    }
  }

  BerezinEstimate est;
  est.witness = make_point(dgrids, best_d);
  est.witness_mu = make_point(cgrids, best_c);
  est.exact = hd + hc == 0;
  est.grid_radii = hd + hc > 0 ? plan.radii : 0;
  est.grid_angles = hd + hc > 0 ? plan.angles : 0;
  est.grid_points = dtotal * ctotal;

  const OpBlock op(a);
  RkhsPoint& mu = *est.witness_mu;
  double value = pair_modulus(op, domain, est.witness, codomain, mu);
  if (hd + hc > 0 && spec.refine) {
    std::vector<const LeafGrid*> dptr;
    std::vector<const LeafGrid*> cptr;
    for (const auto& g : dgrids) dptr.push_back(&g);
    for (const auto& g : cgrids) cptr.push_back(&g);
    est.refinement_iters =
        refine_polar([&] { return pair_modulus(op, domain, est.witness, codomain, mu); }, {&est.witness, &mu},
                     {dptr, cptr}, plan, spec, Sense::Max, value);
    value = pair_modulus(op, domain, est.witness, codomain, mu);
  }
  est.value = value;
  return est;
}

}  // namespace

Complex berezin_symbol(const CMatrix& a, const RkhsModel& m, const RkhsPoint& p) {
  require_operator_on(a, m, m);
  const CVector k = normalized_kernel(m, p);
  return k.dot(a * k);
}

Complex berezin_pair(const CMatrix& a, const RkhsModel& domain, const RkhsPoint& lambda, const RkhsModel& codomain,
                     const RkhsPoint& mu) {
  require_operator_on(a, domain, codomain);
  const CVector kl = normalized_kernel(domain, lambda);
  const CVector km = normalized_kernel(codomain, mu);
  return km.dot(a * kl);
}

BerezinEstimate berezin_number(const CMatrix& a, const RkhsModel& m, const GridSpec& grid) {
  return diagonal_search(a, m, grid, Sense::Max);
}

BerezinEstimate berezin_inf_c(const CMatrix& a, const RkhsModel& m, const GridSpec& grid) {
  return diagonal_search(a, m, grid, Sense::Min);
}

BerezinEstimate berezin_norm(const CMatrix& a, const RkhsModel& m, const GridSpec& grid) {
  require_operator_on(a, m, m);
  // For positive operators |<A k_l, k_m>| <= <A k_l, k_l>^1/2 <A k_m, k_m>^1/2,
  // so the norm is the Berezin number; only worth it when the pair search is
  // not exhaustive.
  if (!m.is_finite() && is_psd(a)) {
    BerezinEstimate est = berezin_number(a, m, grid);
    est.witness_mu = est.witness;
    est.via_positivity = true;
    return est;
  }
  return pair_search(a, m, m, grid);
}

BerezinEstimate berezin_norm(const CMatrix& a, const RkhsModel& domain, const RkhsModel& codomain,
                             const GridSpec& grid) {
  return pair_search(a, domain, codomain, grid);
}

std::string describe_point(const RkhsPoint& p) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (i) os << ", ";
    if (const auto* idx = std::get_if<std::size_t>(&p.coords[i])) {
      os << *idx;
    } else {
      const Complex z = std::get<Complex>(p.coords[i]);
      os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    }
  }
  os << ")";
  return os.str();
}

}  // namespace berezin
