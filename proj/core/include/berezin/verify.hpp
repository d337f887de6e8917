#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "berezin/bounds.hpp"
#include "berezin/random.hpp"

namespace berezin {

struct InstanceSpec {
  std::uint64_t seed = 0;
  Eigen::Index dim = 2;
  std::size_t n_blocks = 2;
  double scale = 1.0;
  Ensemble ensemble = Ensemble::ComplexGaussian;
  /// Stream label; the fuzzer uses the bound id so every (bound, seed) pair
  /// draws from its own stream.
  std::string label;
  /// Give block index i its own dimension (Gaussian ensembles only).
  bool rectangular = false;
};

/// Block dimensions used by gen_instance for `spec`.
std::vector<Eigen::Index> instance_dims(const InstanceSpec& spec);

/// n_blocks x n_blocks block matrix plus three lists of n_blocks square
/// operators, all drawn from one deterministic stream.
BoundInput gen_instance(const InstanceSpec& spec);

/// gen_instance adjusted to the hypotheses of bound `id` (positive inputs
/// where required, a commuting pair for the commuting-case bound).
BoundInput instance_for_bound(std::string_view id, const InstanceSpec& spec);

/// Per-trial parameters drawn from the same stream (alpha, t, r, n_power).
BoundParams params_for_bound(std::string_view id, const InstanceSpec& spec);

/// Exact finite model matching the instance layout for bound `id`.
RkhsModel model_for_bound(std::string_view id, const InstanceSpec& spec);

BoundReport check_bound(std::string_view id, const BoundInput& instance, const RkhsModel& m,
                        const BoundParams& params, const CheckTolerance& tol = {}, const GridSpec& grid = {});

struct Violation {
  InstanceSpec spec;
  BoundReport report;
  /// Set when evaluating the trial raised instead of producing a report.
  std::string error;
};

struct BoundStats {
  std::string bound_id;
  std::size_t trials = 0;
  std::size_t holds = 0;
  std::size_t violations = 0;
  std::size_t inconclusive = 0;
  double min_margin = 0.0;
  double min_relative_margin = 0.0;
};

struct FuzzSummary {
  std::size_t trials = 0;
  std::size_t holds = 0;
  std::size_t inconclusive = 0;
  std::vector<Violation> violations;
  double min_margin = 0.0;
  std::vector<BoundStats> per_bound;
};

struct FuzzConfig {
  std::vector<std::string> bound_ids;
  std::size_t n_trials = 250;
  std::uint64_t base_seed = 0;
  std::vector<Ensemble> ensembles{Ensemble::ComplexGaussian, Ensemble::PSD, Ensemble::Nilpotent, Ensemble::Unitary};
  Eigen::Index min_dim = 1;
  Eigen::Index max_dim = 6;
  double scale = 1.0;
  unsigned threads = 1;
  CheckTolerance tol;
};

/// Trial spec for (bound, ensemble, k): seed = base_seed + k,
/// dim = min_dim + seed mod (max_dim - min_dim + 1).
InstanceSpec fuzz_spec(std::string_view id, Ensemble e, std::uint64_t seed, const FuzzConfig& cfg);

/// Replays a stored trial exactly.
BoundReport replay(std::string_view id, const InstanceSpec& spec, const CheckTolerance& tol = {});

FuzzSummary fuzz(const FuzzConfig& cfg);

/// Bound values on one instance, ascending (ties keep the input order).
std::vector<std::pair<std::string, double>> compare_bounds(const std::vector<std::string>& ids,
                                                           const BoundInput& instance, const RkhsModel& m,
                                                           const BoundParams& params, const GridSpec& grid = {});

// Lemma property checks.

struct LemmaReport {
  std::string lemma_id;
  bool holds = true;
  /// Smallest rhs - lhs seen (for agreement checks: minus the largest gap).
  double min_slack = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
};

const std::vector<std::string>& lemma_ids();
/// One randomized sample of the lemma built from `spec` (dim, n_blocks as the
/// count n, seed).
LemmaReport check_lemma(std::string_view id, const InstanceSpec& spec);
/// `trials` samples with seeds base_seed .. base_seed + trials - 1.
LemmaReport lemma_suite(std::string_view id, std::size_t trials, std::uint64_t base_seed = 0);

}  // namespace berezin
