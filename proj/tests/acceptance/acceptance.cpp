// Acceptance suite: one line per criterion, exit status 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "berezin/berezin.hpp"
#include "berezin/bounds.hpp"
#include "berezin/examples.hpp"
#include "berezin/verify.hpp"

using namespace berezin;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED(" << what << ")";
    }
  }
};

const Ensemble kEnsembles[] = {Ensemble::ComplexGaussian, Ensemble::PSD, Ensemble::Nilpotent, Ensemble::Unitary};

RkhsModel pair_model(Eigen::Index d) {
  return RkhsModel::direct_sum({RkhsModel::finite_standard(d), RkhsModel::finite_standard(d)});
}

void hardy_reproduction(Outcome& o) {
  const auto t0 = Clock::now();
  for (const char* id : {"ex_co5_hardy", "ex_th8_hardy", "ex_c28_hardy"}) {
    const ExampleResult r = run_example(id);
    for (const auto& l : r.lines) {
      if (l.informational) continue;
      o.detail << " " << l.label << "=" << l.computed;
      o.require(l.pass, l.label);
    }
  }
  const RkhsModel h = RkhsModel::hardy();
  const double mz = berezin_number(hardy_operator(HardyKind::Mz, h.dimension()), h).value;
  o.detail << " ber(Mz)=" << mz;
  o.require(mz >= 0.99, "ber(Mz) >= 0.99");
  const double s = seconds_since(t0);
  o.detail << " time=" << s << "s";
  o.require(s < 60.0, "time < 60 s");
}

void baseline_comparisons(Outcome& o) {
  const auto t0 = Clock::now();
  for (const auto& id : example_ids()) {
    if (id.starts_with("ex_")) continue;
    const ExampleResult r = run_example(id);
    o.require(r.pass, id);
    for (const auto& l : r.lines) {
      if (l.informational) o.detail << " [" << id << " " << l.label << "=" << l.computed << " vs " << l.expected << "]";
    }
  }
  const double s = seconds_since(t0);
  o.detail << " time=" << s << "s";
  o.require(s < 5.0, "time < 5 s");
}

void full_fuzz(Outcome& o) {
  const auto t0 = Clock::now();
  FuzzConfig cfg;
  for (const auto& info : bound_catalog()) cfg.bound_ids.push_back(info.id);
  cfg.n_trials = 250;
  cfg.min_dim = 1;
  cfg.max_dim = 6;
  const FuzzSummary s = fuzz(cfg);
  o.detail << " trials=" << s.trials << " violations=" << s.violations.size() << " inconclusive=" << s.inconclusive;
  o.require(s.trials == cfg.bound_ids.size() * 4 * 250, "trial count");
  o.require(s.violations.empty(), "zero violations");
  for (const auto& v : s.violations) {
    o.detail << " [" << v.report.bound_id << " seed " << v.spec.seed << " " << to_string(v.spec.ensemble) << "]";
  }
  const double t = seconds_since(t0);
  o.detail << " time=" << t << "s";
  o.require(t < 600.0, "time < 10 min");
}

void oracle_equivalences(Outcome& o) {
  double co5_gap = 0.0;
  BoundParams half;
  half.t = 0.5;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    InstanceSpec s;
    s.seed = seed;
    s.dim = 1 + static_cast<Eigen::Index>(seed % 6);
    s.ensemble = kEnsembles[seed % 4];
    s.label = "acceptance/co5";
    const BoundInput in = gen_instance(s);
    const RkhsModel m = pair_model(s.dim);
    const double a = bound_rhs("co5", in, m, half);
    co5_gap = std::max(co5_gap, std::abs(a - bound_rhs("th4", in, m, half)) / std::max(1.0, a));
  }
  o.detail << " co5-th4=" << co5_gap;
  o.require(co5_gap <= 1e-9, "co5 vs th4");

  double w_gap = 0.0;
  Rng rng(stream_seed(0, "acceptance/nonneg"));
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index n = 1 + k % 6;
    CMatrix a(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) a(i, j) = std::abs(rng.normal());
    }
    w_gap = std::max(w_gap, std::abs(numerical_radius(a) - numerical_radius_entrywise_nonneg(a)));
  }
  o.detail << " w-nonneg=" << w_gap;
  o.require(w_gap <= 1e-8, "numerical radius");

  double lim_gap = 0.0;
  BoundParams big;
  big.alpha = 1e8;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    InstanceSpec s;
    s.seed = seed;
    s.dim = 1 + static_cast<Eigen::Index>(seed % 6);
    s.ensemble = kEnsembles[seed % 4];
    s.label = "acceptance/limits";
    const BoundInput in = gen_instance(s);
    const RkhsModel m = pair_model(s.dim);
    lim_gap = std::max(lim_gap, std::abs(bound_rhs("th5", in, m, big) - bound_rhs("co4", in, m, big)));
    lim_gap = std::max(lim_gap, std::abs(bound_rhs("th6", in, m, big) - bound_rhs("co6", in, m, big)));
  }
  o.detail << " limits=" << lim_gap;
  o.require(lim_gap <= 1e-5, "alpha limits");
}

void lemma_suites(Outcome& o) {
  for (const char* id : {"lm1", "lm5", "lm6", "lm8", "lm9", "lm11", "lm13"}) {
    const LemmaReport r = lemma_suite(id, 10000);
    o.detail << " " << id << "(" << r.samples << ")";
    o.require(r.holds, id);
  }
  // equal entries: (sum a)^r = n^(r-1) sum a^r
  double worst = 0.0;
  Rng rng(stream_seed(0, "acceptance/lm9"));
  for (int k = 0; k < 10000; ++k) {
    const int n = 1 + k % 8;
    const double a = rng.uniform() * 10.0 + 1e-3;
    for (int r = 1; r <= 3; ++r) {
      double sum = 0.0, sum_r = 0.0;
      for (int i = 0; i < n; ++i) {
        sum += a;
        sum_r += std::pow(a, r);
      }
      const double lhs = std::pow(sum, r);
      const double rhs = std::pow(static_cast<double>(n), r - 1) * sum_r;
      worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
  }
  o.detail << " lm9 saturation rel gap=" << worst;
  o.require(worst <= 16 * std::numeric_limits<double>::epsilon(), "lm9 saturation");
}

void chain_invariants(Outcome& o) {
  std::size_t checked = 0;
  double worst = 0.0;
  auto check = [&](const CMatrix& a, const RkhsModel& m) {
    const double ber = berezin_number(a, m).value;
    const double bn = berezin_norm(a, m).value;
    const double nrm = op_norm(a);
    const double w = numerical_radius(a);
    worst = std::max({worst, ber - bn, bn - nrm, nrm / 2 - w, w - nrm});
    ++checked;
  };
  for (Ensemble e : kEnsembles) {
    for (std::uint64_t seed = 0; seed < 250; ++seed) {
      InstanceSpec s;
      s.seed = seed;
      s.dim = 1 + static_cast<Eigen::Index>(seed % 6);
      s.n_blocks = 1 + static_cast<std::size_t>((seed / 6) % 3);
      s.ensemble = e;
      s.label = "acceptance/chain";
      const BoundInput in = gen_instance(s);
      const RkhsModel f = RkhsModel::finite_standard(s.dim);
      for (std::size_t i = 0; i < in.blocks.n(); ++i) {
        for (std::size_t j = 0; j < in.blocks.n(); ++j) check(in.blocks(i, j), f);
      }
      for (const auto& a : in.as) check(a, f);
      std::vector<RkhsModel> factors(in.blocks.n(), f);
      check(assemble_block(in.blocks), RkhsModel::direct_sum(factors));
    }
  }
  o.detail << " instances=" << checked << " worst excess=" << worst;
  o.require(worst <= 1e-8, "chain within 1e-8");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {"1 Hardy reproduction", hardy_reproduction},
      {"2 baseline comparisons", baseline_comparisons},
      {"3 property fuzz", full_fuzz},
      {"4 oracle equivalences", oracle_equivalences},
      {"5 lemma suite", lemma_suites},
      {"6 chain invariants", chain_invariants},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " error: " << e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %s:%s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
