#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "berezin/error.hpp"
#include "berezin/examples.hpp"
#include "berezin/spec_file.hpp"
#include "output.hpp"

namespace {

using namespace berezin;
using cli::Format;

enum Exit : int { Ok = 0, Violation = 1, Usage = 2, Shape = 3, UnknownId = 4 };

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonConformalBlocks:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotSquare:
    case ErrorCode::NotTwoByTwo:
    case ErrorCode::ListLengthMismatch:
      return Shape;
    case ErrorCode::UnknownBound:
    case ErrorCode::UnknownLemma:
    case ErrorCode::UnknownExample:
      return UnknownId;
    default:
      return Usage;
  }
}

struct Common {
  std::string format = "text";
  std::string out;
  std::optional<Eigen::Index> hardy_dim;
  std::optional<double> hardy_rmax;
  std::optional<int> grid_radii;
  std::optional<int> grid_angles;

  Format fmt() const {
    if (format == "json") return Format::Json;
    if (format == "csv") return Format::Csv;
    return Format::Text;
  }
  ParseOptions parse_options() const { return {hardy_dim, hardy_rmax}; }
  GridSpec grid() const {
    GridSpec g;
    if (grid_radii) g.radii = *grid_radii;
    if (grid_angles) g.angles = *grid_angles;
    return g;
  }
};

void emit(const Common& c, const std::string& text) {
  std::cout << text;
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw Error(ErrorCode::BadParameter, "cannot write '" + c.out + "'");
    f << text;
  }
}

Complex parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Error(ErrorCode::BadParameter, "cannot read '" + s + "' as a scalar (use re or re,im)");
  }
}

// One coordinate per leaf, separated by ';': an index for finite leaves and
// "re,im" for Hardy leaves.
RkhsPoint parse_point(const std::string& text, const RkhsModel& m) {
  const auto leaves = m.leaves();
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ';');) parts.push_back(part);
  if (parts.size() != leaves.size()) {
    throw Error(ErrorCode::BadParameter, "point needs " + std::to_string(leaves.size()) + " coordinate(s)");
  }
  RkhsPoint p;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (std::holds_alternative<HardyTruncated>(leaves[i]->variant())) {
      p.coords.emplace_back(parse_complex(parts[i]));
    } else {
      try {
        p.coords.emplace_back(static_cast<std::size_t>(std::stoull(parts[i])));
      } catch (const std::exception&) {
        throw Error(ErrorCode::BadParameter, "finite coordinate '" + parts[i] + "' is not an index");
      }
    }
  }
  return p;
}

// The operator a compute command acts on, with the model it lives on.
std::pair<CMatrix, RkhsModel> compute_subject(const SpecFile& s, const std::string& name) {
  CMatrix a;
  if (!name.empty()) {
    const auto it = s.operators.find(name);
    if (it == s.operators.end()) throw Error(ErrorCode::BadSpec, "no operator named '" + name + "'");
    a = it->second;
  } else if (s.subject || (s.block_names.empty() && s.operators.size() == 1)) {
    a = s.subject_operator();
  } else if (!s.block_names.empty()) {
    a = assemble_block(s.input.blocks);
  } else {
    throw Error(ErrorCode::BadSpec, "spec has several operators; pass --operator");
  }
  if (a.rows() == s.model.dimension() && a.cols() == s.model.dimension()) return {a, s.model};
  for (const auto& f : s.model.factors()) {
    if (a.rows() == f.dimension() && a.cols() == f.dimension()) return {a, f};
  }
  throw Error(ErrorCode::DimensionMismatch, "operator is " + std::to_string(a.rows()) + "x" +
                                                std::to_string(a.cols()) + " but the model has dimension " +
                                                std::to_string(s.model.dimension()));
}

struct ComputeArgs {
  std::string file;
  std::string quantity;
  std::string point;
  std::string op;
};

int run_compute(const Common& c, const ComputeArgs& a) {
  const SpecFile s = load_spec(a.file, c.parse_options());
  const auto [op, model] = compute_subject(s, a.op);
  const GridSpec grid = c.grid();
  cli::QuantityResult q;
  q.quantity = a.quantity;
  if (a.quantity == "symbol") {
    if (a.point.empty()) throw Error(ErrorCode::BadParameter, "symbol needs --point");
    const Complex z = berezin_symbol(op, model, parse_point(a.point, model));
    q.symbol = z;
    q.value = std::abs(z);
  } else if (a.quantity == "ber" || a.quantity == "bernorm" || a.quantity == "c") {
    const BerezinEstimate e = a.quantity == "ber"       ? berezin_number(op, model, grid)
                              : a.quantity == "bernorm" ? berezin_norm(op, model, grid)
                                                        : berezin_inf_c(op, model, grid);
    q.value = e.value;
    q.exact = e.exact;
    q.estimate = e;
  } else if (a.quantity == "wnum") {
    require_square(op, "operator");
    q.value = numerical_radius(op);
  } else {
    q.value = op_norm(op);
  }
  std::ostringstream os;
  cli::print_quantity(os, c.fmt(), q);
  emit(c, os.str());
  return Ok;
}

struct BoundArgs {
  std::string file;
  std::string id;
  std::optional<double> t;
  std::optional<std::string> alpha;
  std::optional<std::string> beta;
  std::optional<int> r;
  std::optional<int> n_power;
  std::optional<double> tol;
};

int run_bound(const Common& c, const BoundArgs& a) {
  const SpecFile s = load_spec(a.file, c.parse_options());
  std::string id = a.id;
  if (id.empty()) {
    if (!s.target) throw Error(ErrorCode::BadParameter, "no bound id given and the spec has no \"target\"");
    id = *s.target;
  }
  bound_info(id);
  BoundParams p = s.params;
  if (a.t) {
    p.t = *a.t;
    if (s.fg_name == "power") p.fg = power_pair(p.t);
  }
  if (a.alpha) p.alpha = parse_complex(*a.alpha);
  if (a.beta) p.beta = parse_complex(*a.beta);
  if (a.r) p.r = *a.r;
  if (a.n_power) p.n_power = *a.n_power;
  CheckTolerance tol;
  if (a.tol) tol.relative = *a.tol;
  const BoundReport r = evaluate_bound(id, s.input, s.model, p, c.grid(), tol);
  std::ostringstream os;
  cli::print_report(os, c.fmt(), r);
  emit(c, os.str());
  return r.verdict == Verdict::ViolatedBeyondTolerance ? Violation : Ok;
}

struct VerifyArgs {
  std::vector<std::string> ids;
  std::size_t trials = 250;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::optional<double> tol;
  Eigen::Index min_dim = 1;
  Eigen::Index max_dim = 6;
  std::vector<std::string> ensembles;
  std::string replay_dir = "berezin-violations";
};

int run_verify(const Common& c, const VerifyArgs& a) {
  if (a.trials < 1) {
    std::cerr << "verify: --trials must be at least 1\n";
    return Usage;
  }
  FuzzConfig cfg;
  if (a.ids.empty() || (a.ids.size() == 1 && a.ids[0] == "all")) {
    for (const auto& b : bound_catalog()) cfg.bound_ids.push_back(b.id);
  } else {
    for (const auto& id : a.ids) bound_info(id);
    cfg.bound_ids = a.ids;
  }
  cfg.n_trials = a.trials;
  cfg.base_seed = a.seed;
  cfg.threads = a.threads;
  cfg.min_dim = a.min_dim;
  cfg.max_dim = a.max_dim;
  if (a.tol) cfg.tol.relative = *a.tol;
  if (!a.ensembles.empty()) {
    cfg.ensembles.clear();
    for (const auto& e : a.ensembles) cfg.ensembles.push_back(ensemble_from_string(e));
  }
  const FuzzSummary sum = fuzz(cfg);

  std::vector<std::string> replays;
  if (!sum.violations.empty()) {
    std::filesystem::create_directories(a.replay_dir);
    for (const auto& v : sum.violations) {
      const std::string path = (std::filesystem::path(a.replay_dir) /
                                (v.report.bound_id + "_" + std::string(to_string(v.spec.ensemble)) + "_seed" +
                                 std::to_string(v.spec.seed) + ".json"))
                                   .string();
      std::ofstream f(path);
      f << spec_to_json(spec_for_trial(v.report.bound_id, v.spec)).dump(2) << "\n";
      replays.push_back(path);
    }
  }
  std::ostringstream os;
  cli::print_summary(os, c.fmt(), sum, replays);
  emit(c, os.str());
  return sum.violations.empty() ? Ok : Violation;
}

int run_reproduce(const Common& c, const std::vector<std::string>& ids) {
  std::vector<std::string> todo;
  if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) {
    todo = example_ids();
  } else {
    for (const auto& id : ids) example_description(id);
    todo = ids;
  }
  std::vector<ExampleResult> results;
  bool ok = true;
  for (const auto& id : todo) {
    results.push_back(run_example(id, c.parse_options(), c.grid()));
    ok = ok && results.back().pass;
  }
  std::ostringstream os;
  cli::print_examples(os, c.fmt(), results);
  emit(c, os.str());
  return ok ? Ok : Violation;
}

int run_list(const Common& c) {
  std::ostringstream os;
  if (c.fmt() == Format::Json) {
    nlohmann::json j;
    for (const auto& b : bound_catalog()) j["bounds"].push_back({{"id", b.id}, {"description", b.description}});
    j["examples"] = example_ids();
    j["lemmas"] = lemma_ids();
    os << j.dump(2) << "\n";
  } else {
    os << "bounds:\n";
    for (const auto& b : bound_catalog()) os << "  " << b.id << "  " << b.description << "\n";
    os << "examples:\n";
    for (const auto& id : example_ids()) os << "  " << id << "  " << example_description(id) << "\n";
    os << "lemmas:\n ";
    for (const auto& id : lemma_ids()) os << " " << id;
    os << "\n";
  }
  emit(c, os.str());
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Berezin number toolkit: quantities, bounds, fuzz verification and example reproduction"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", common.out, "Also write the output to this file");
  app.add_option("--hardy-dim", common.hardy_dim, "Override the Hardy truncation N")->check(CLI::PositiveNumber);
  app.add_option("--hardy-rmax", common.hardy_rmax, "Override the Hardy radius cap")->check(CLI::Range(0.0, 1.0));
  app.add_option("--grid-radii", common.grid_radii, "Radial grid points per Hardy coordinate")
      ->check(CLI::PositiveNumber);
  app.add_option("--grid-angles", common.grid_angles, "Angular grid points per Hardy coordinate")
      ->check(CLI::PositiveNumber);
  app.fallthrough();

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "Compute a Berezin quantity of an operator spec");
  compute->add_option("file", ca.file, "Operator spec file")->required();
  compute->add_option("quantity", ca.quantity, "Quantity")
      ->required()
      ->check(CLI::IsMember({"symbol", "ber", "bernorm", "c", "wnum", "opnorm"}));
  compute->add_option("--point", ca.point, "Point for symbol: leaf coordinates separated by ';'");
  compute->add_option("--operator", ca.op, "Named operator (default: the spec's subject or block matrix)");

  BoundArgs ba;
  auto* bound = app.add_subcommand("bound", "Evaluate a bound against its left side");
  bound->add_option("file", ba.file, "Operator spec file")->required();
  bound->add_option("id", ba.id, "Bound id (default: the spec's target)");
  bound->add_option("--t", ba.t, "Power split")->check(CLI::Range(0.0, 1.0));
  bound->add_option("--alpha", ba.alpha, "alpha as re or re,im");
  bound->add_option("--beta", ba.beta, "beta as re or re,im");
  bound->add_option("--r", ba.r, "Power r")->check(CLI::PositiveNumber);
  bound->add_option("--n-power", ba.n_power, "Power n")->check(CLI::Range(2, 64));
  bound->add_option("--tol", ba.tol, "Relative violation tolerance")->check(CLI::NonNegativeNumber);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Fuzz bounds on random finite instances");
  verify->add_option("ids", va.ids, "Bound ids or 'all'");
  verify->add_option("--trials", va.trials, "Seeds per bound and ensemble")->capture_default_str();
  verify->add_option("--seed", va.seed, "Base seed")->capture_default_str();
  verify->add_option("--threads", va.threads, "Worker threads")->capture_default_str();
  verify->add_option("--tol", va.tol, "Relative violation tolerance")->check(CLI::NonNegativeNumber);
  verify->add_option("--min-dim", va.min_dim, "Smallest dimension")->capture_default_str();
  verify->add_option("--max-dim", va.max_dim, "Largest dimension")->capture_default_str();
  verify->add_option("--ensembles", va.ensembles, "Ensembles (ComplexGaussian, RealGaussian, PSD, Nilpotent, Unitary)");
  verify->add_option("--replay-dir", va.replay_dir, "Directory for violation replay specs")->capture_default_str();

  std::vector<std::string> rids;
  auto* reproduce = app.add_subcommand("reproduce", "Reproduce the worked examples and baseline comparisons");
  reproduce->add_option("ids", rids, "Example ids or 'all'");

  auto* list = app.add_subcommand("list", "List bound, example and lemma ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? Ok : Usage;
  }

  try {
    if (*compute) return run_compute(common, ca);
    if (*bound) return run_bound(common, ba);
    if (*verify) return run_verify(common, va);
    if (*reproduce) return run_reproduce(common, rids);
    if (*list) return run_list(common);
  } catch (const Error& e) {
    std::cerr << "berezin: " << e.what() << "\n";
    return exit_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "berezin: " << e.what() << "\n";
    return Usage;
  }
  return Usage;
}
