#include "berezin/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "berezin/error.hpp"

namespace berezin {

namespace {

bool gaussian(Ensemble e) { return e == Ensemble::ComplexGaussian || e == Ensemble::RealGaussian; }

bool block_shape(BoundShape s) {
  switch (s) {
    case BoundShape::Lists:
    case BoundShape::PsdPair:
    case BoundShape::Single:
      return false;
    default:
      return true;
  }
}

// Shapes whose bounds accept summands of different dimensions.
bool allows_rectangular(const BoundInfo& info) {
  if (info.id == "th7") return false;
  switch (info.shape) {
    case BoundShape::Blocks:
    case BoundShape::TwoByTwo:
    case BoundShape::Diagonal:
    case BoundShape::OffDiagonal:
      return true;
    default:
      return false;
  }
}

CMatrix gram(const CMatrix& a) { return hermitian_part(a * a.adjoint()); }

}  // namespace

std::vector<Eigen::Index> instance_dims(const InstanceSpec& spec) {
  if (spec.dim < 1 || spec.n_blocks < 1) throw Error(ErrorCode::BadSpec, "instance needs dim >= 1 and n_blocks >= 1");
  std::vector<Eigen::Index> dims(spec.n_blocks, spec.dim);
  if (spec.rectangular && gaussian(spec.ensemble)) {
    for (std::size_t i = 1; i < dims.size(); ++i) {
      const std::uint64_t h = splitmix64(spec.seed ^ (0xA5A5A5A5ULL + i));
      dims[i] = 1 + static_cast<Eigen::Index>(h % static_cast<std::uint64_t>(spec.dim));
    }
  }
  return dims;
}

BoundInput gen_instance(const InstanceSpec& spec) {
  if (!(spec.scale >= 0.0) || !std::isfinite(spec.scale)) throw Error(ErrorCode::BadSpec, "scale must be >= 0");
  const auto dims = instance_dims(spec);
  const std::size_t n = spec.n_blocks;
  Rng rng(stream_seed(spec.seed, spec.label));

  std::vector<std::vector<CMatrix>> grid(n, std::vector<CMatrix>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) grid[i][j] = random_matrix(rng, spec.ensemble, dims[i], dims[j], spec.scale);
  }
  BoundInput in = BoundInput::from_blocks(BlockMatrix(std::move(grid)));
  for (std::size_t i = 0; i < n; ++i) in.as.push_back(random_matrix(rng, spec.ensemble, spec.dim, spec.dim, spec.scale));
  for (std::size_t i = 0; i < n; ++i) in.bs.push_back(random_matrix(rng, spec.ensemble, spec.dim, spec.dim, spec.scale));
  for (std::size_t i = 0; i < n; ++i) in.xs.push_back(random_matrix(rng, spec.ensemble, spec.dim, spec.dim, spec.scale));
  return in;
}

BoundInput instance_for_bound(std::string_view id, const InstanceSpec& spec) {
  BoundInput in = gen_instance(spec);
  if (id == "cot11i" || id == "cot11ii" || id == "ee3") {
    in.as[0] = gram(in.as[0]);
    in.bs[0] = gram(in.bs[0]);
  } else if (id == "cot11comm") {
    // B shares the eigenbasis of A, so the pair commutes to rounding error.
    const HermEig eig = herm_eig(gram(in.as[0]));
    Rng rng(stream_seed(spec.seed, spec.label + "/commuting"));
    const Eigen::Index d = eig.eigenvalues.size();
    RVector lam = eig.eigenvalues.cwiseMax(0.0);
    RVector mu(d);
    for (Eigen::Index k = 0; k < d; ++k) mu(k) = std::abs(rng.normal()) * spec.scale * spec.scale;
    const CMatrix& v = eig.eigenvectors;
    in.as[0] = hermitian_part(v * lam.cast<Complex>().asDiagonal() * v.adjoint());
    in.bs[0] = hermitian_part(v * mu.cast<Complex>().asDiagonal() * v.adjoint());
  }
  return in;
}

BoundParams params_for_bound(std::string_view id, const InstanceSpec& spec) {
  Rng rng(stream_seed(spec.seed, spec.label + "/params"));
  static const Complex alphas[] = {{2.0, 0.0}, {1.0, 0.0}, {3.0, 4.0}, {0.5, 0.0}, {-1.5, 0.5}, {10.0, 0.0}};
  static const double splits[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  BoundParams p;
  p.alpha = alphas[rng.next() % 6];
  const std::uint64_t pick = rng.next() % 6;
  p.t = pick < 5 ? splits[pick] : rng.uniform();
  p.r = 1 + static_cast<int>(rng.next() % 3);
  p.n_power = 2 + static_cast<int>(rng.next() % 3);
  // half of the th4 trials go through the user-supplied pair hook
  if (id == "th4" && rng.next() % 2 == 1) p.fg = shifted_root_pair();
  return p;
}

RkhsModel model_for_bound(std::string_view id, const InstanceSpec& spec) {
  const BoundInfo& info = bound_info(id);
  if (!block_shape(info.shape)) return RkhsModel::finite_standard(spec.dim);
  const auto dims = instance_dims(spec);
  const std::size_t n = info.shape == BoundShape::Blocks ? spec.n_blocks : 2;
  if (dims.size() < n) throw Error(ErrorCode::BadSpec, "bound " + std::string(id) + " needs a 2x2 block instance");
  std::vector<RkhsModel> factors;
  for (std::size_t i = 0; i < n; ++i) factors.push_back(RkhsModel::finite_standard(dims[i]));
  return RkhsModel::direct_sum(std::move(factors));
}

BoundReport check_bound(std::string_view id, const BoundInput& instance, const RkhsModel& m,
                        const BoundParams& params, const CheckTolerance& tol, const GridSpec& grid) {
  return evaluate_bound(id, instance, m, params, grid, tol);
}

InstanceSpec fuzz_spec(std::string_view id, Ensemble e, std::uint64_t seed, const FuzzConfig& cfg) {
  const BoundInfo& info = bound_info(id);
  InstanceSpec s;
  s.seed = seed;
  s.ensemble = e;
  s.scale = cfg.scale;
  s.label = std::string(id) + "/" + std::string(to_string(e));
  const auto range = static_cast<std::uint64_t>(cfg.max_dim - cfg.min_dim + 1);
  s.dim = cfg.min_dim + static_cast<Eigen::Index>(seed % range);
  const std::size_t varied = 1 + static_cast<std::size_t>((seed / range) % 3);
  switch (info.shape) {
    case BoundShape::Blocks: s.n_blocks = varied; break;
    case BoundShape::Lists:
      if (id == "cot9iv" || id == "ee1") {
        s.n_blocks = 2;
      } else if (id == "th9" || id == "cot9i" || id == "cot9ii" || id == "cot9iii") {
        s.n_blocks = varied;
      } else {
        s.n_blocks = 1;
      }
      break;
    case BoundShape::PsdPair:
    case BoundShape::Single: s.n_blocks = 1; break;
    default: s.n_blocks = 2; break;
  }
  s.rectangular = allows_rectangular(info) && gaussian(e);
  return s;
}

BoundReport replay(std::string_view id, const InstanceSpec& spec, const CheckTolerance& tol) {
  return check_bound(id, instance_for_bound(id, spec), model_for_bound(id, spec), params_for_bound(id, spec), tol);
}

FuzzSummary fuzz(const FuzzConfig& cfg) {
  if (cfg.n_trials < 1) throw Error(ErrorCode::BadParameter, "fuzz needs at least one trial");
  if (cfg.min_dim < 1 || cfg.max_dim < cfg.min_dim) throw Error(ErrorCode::BadParameter, "invalid dimension range");
  for (const auto& id : cfg.bound_ids) bound_info(id);

  struct Job {
    std::size_t bound;
    InstanceSpec spec;
  };
  struct Outcome {
    BoundReport report;
    std::string error;
  };
  std::vector<Job> jobs;
  for (std::size_t b = 0; b < cfg.bound_ids.size(); ++b) {
    for (Ensemble e : cfg.ensembles) {
      for (std::size_t k = 0; k < cfg.n_trials; ++k) {
        jobs.push_back({b, fuzz_spec(cfg.bound_ids[b], e, cfg.base_seed + k, cfg)});
      }
    }
  }

  std::vector<Outcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const std::string& id = cfg.bound_ids[jobs[i].bound];
      try {
        outcomes[i].report = replay(id, jobs[i].spec, cfg.tol);
      } catch (const std::exception& ex) {
        outcomes[i].report.bound_id = id;
        outcomes[i].report.verdict = Verdict::ViolatedBeyondTolerance;
        outcomes[i].error = ex.what();
      }
    }
  };
  const unsigned threads = std::max(1u, cfg.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  FuzzSummary sum;
  sum.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& id : cfg.bound_ids) {
    BoundStats st;
    st.bound_id = id;
    st.min_margin = std::numeric_limits<double>::infinity();
    st.min_relative_margin = std::numeric_limits<double>::infinity();
    sum.per_bound.push_back(st);
  }
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Outcome& o = outcomes[i];
    BoundStats& st = sum.per_bound[jobs[i].bound];
    ++sum.trials;
    ++st.trials;
    if (o.error.empty()) {
      st.min_margin = std::min(st.min_margin, o.report.margin);
      st.min_relative_margin = std::min(st.min_relative_margin, o.report.margin / std::max(1.0, o.report.rhs));
      sum.min_margin = std::min(sum.min_margin, o.report.margin);
    }
    switch (o.report.verdict) {
      case Verdict::Holds:
        ++sum.holds;
        ++st.holds;
        break;
      case Verdict::Inconclusive:
        ++sum.inconclusive;
        ++st.inconclusive;
        break;
      case Verdict::ViolatedBeyondTolerance:
        ++st.violations;
        sum.violations.push_back({jobs[i].spec, o.report, o.error});
        break;
    }
  }
  return sum;
}

std::vector<std::pair<std::string, double>> compare_bounds(const std::vector<std::string>& ids,
                                                           const BoundInput& instance, const RkhsModel& m,
                                                           const BoundParams& params, const GridSpec& grid) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& id : ids) out.emplace_back(id, bound_rhs(id, instance, m, params, grid));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

}  // namespace berezin
