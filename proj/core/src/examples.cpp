#include "berezin/examples.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "berezin/error.hpp"

namespace berezin {

namespace {

CMatrix m2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

CMatrix unit2(int i, int j, double v = 1.0) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(i, j) = v;
  return m;
}

struct Builder {
  SpecFile s;

  Builder& model(RkhsModel m) {
    s.model = std::move(m);
    return *this;
  }
  Builder& op(const std::string& name, CMatrix a) {
    s.operators[name] = std::move(a);
    return *this;
  }
  Builder& blocks(std::vector<std::vector<std::optional<std::string>>> names) {
    const std::size_t n = names.size();
    const auto factors = block_factors(s.model, n);
    std::vector<std::vector<CMatrix>> grid(n, std::vector<CMatrix>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        grid[i][k] = names[i][k] ? s.operators.at(*names[i][k])
                                 : CMatrix::Zero(factors[i].dimension(), factors[k].dimension());
      }
    }
    s.input.blocks = BlockMatrix(std::move(grid));
    s.block_names = std::move(names);
    return *this;
  }
  Builder& lists(std::vector<std::string> as, std::vector<std::string> bs = {}) {
    for (const auto& n : as) s.input.as.push_back(s.operators.at(n));
    for (const auto& n : bs) s.input.bs.push_back(s.operators.at(n));
    s.as_names = std::move(as);
    s.bs_names = std::move(bs);
    return *this;
  }
  Builder& r(int v) {
    s.params.r = v;
    return *this;
  }
  Builder& t(double v) {
    s.params.t = v;
    return *this;
  }
};

RkhsModel hardy_model(const ParseOptions& o) {
  return RkhsModel::hardy(o.hardy_dim.value_or(default_hardy_dim), o.hardy_r_max.value_or(default_hardy_r_max));
}

RkhsModel two_by_two_finite() {
  return RkhsModel::direct_sum({RkhsModel::finite_standard(2), RkhsModel::finite_standard(2)});
}

using Lines = std::vector<ExampleLine>;
using Runner = std::function<Lines(const SpecFile&, const GridSpec&)>;

struct Example {
  std::string id;
  std::string description;
  std::function<SpecFile(const ParseOptions&)> build;
  Runner run;
};

ExampleLine line(std::string label, double expected, double computed, double tol, bool info = false) {
  ExampleLine l{std::move(label), expected, computed, tol, info, true};
  l.pass = info || std::abs(computed - expected) <= tol;
  return l;
}

// Bound value raised to the power its inequality controls.
double powered(std::string_view id, const SpecFile& s, const GridSpec& g) {
  const double v = bound_rhs(id, s.input, s.model, s.params, g);
  return std::pow(v, bound_power(id, s.params));
}

Runner compare(std::string a, double ea, double ta, std::string b, double eb, double tb) {
  return [=](const SpecFile& s, const GridSpec& g) {
    return Lines{line(a, ea, powered(a, s, g), ta), line(b, eb, powered(b, s, g), tb)};
  };
}

const std::vector<Example>& catalog() {
  static const std::vector<Example> ex = [] {
    std::vector<Example> v;
    const double root2 = std::sqrt(2.0);

    v.push_back({"ex_co5_hardy", "co5 on [[Mz, P_const], [P_z, Mz2]] over H2 + H2 (truncated)",
                 [](const ParseOptions& o) {
                   const RkhsModel h = hardy_model(o);
                   const Eigen::Index n = h.dimension();
                   Builder b;
                   b.model(RkhsModel::direct_sum({h, h}))
                       .op("Mz", hardy_operator(HardyKind::Mz, n))
                       .op("P_const", hardy_operator(HardyKind::PConst, n))
                       .op("P_z", hardy_operator(HardyKind::PMonomial, n, 1))
                       .op("Mz2", hardy_operator(HardyKind::Mz2, n))
                       .blocks({{"Mz", "P_const"}, {"P_z", "Mz2"}});
                   return b.s;
                 },
                 [](const SpecFile& s, const GridSpec& g) {
                   const RkhsModel h = s.model.factors().front();
                   return Lines{line("co5", 1.5, bound_rhs("co5", s.input, s.model, s.params, g), 5e-3),
                                line("ber(Mz)", 1.0, berezin_number(s.operators.at("Mz"), h, g).value, 1e-2)};
                 }});

    v.push_back({"ex_th8_hardy", "th8 on [[P_const, P_z], [P_z2, P_z3]] over H2 + H2 (truncated)",
                 [](const ParseOptions& o) {
                   const RkhsModel h = hardy_model(o);
                   const Eigen::Index n = h.dimension();
                   Builder b;
                   b.model(RkhsModel::direct_sum({h, h}))
                       .op("P_const", hardy_operator(HardyKind::PConst, n))
                       .op("P_z", hardy_operator(HardyKind::PMonomial, n, 1))
                       .op("P_z2", hardy_operator(HardyKind::PMonomial, n, 2))
                       .op("P_z3", hardy_operator(HardyKind::PMonomial, n, 3))
                       .blocks({{"P_const", "P_z"}, {"P_z2", "P_z3"}});
                   return b.s;
                 },
                 [](const SpecFile& s, const GridSpec& g) {
                   const RMatrix w = block_bernorm_matrix(s.input.blocks, s.model, g);
                   return Lines{line("th8", 1.045, w.operatorNorm(), 2e-3),
                                line("||P_const||_ber", 1.0, w(0, 0), 1e-3),
                                line("||P_z||_ber", 0.25, w(0, 1), 1e-3),
                                line("||P_z2||_ber", 4.0 / 27.0, w(1, 0), 1e-3),
                                line("||P_z3||_ber", 27.0 / 256.0, w(1, 1), 1e-3)};
                 }});

    v.push_back({"ex_c28_hardy", "||diag(P_const, P_z)||_ber over H2 + H2 (truncated)",
                 [](const ParseOptions& o) {
                   const RkhsModel h = hardy_model(o);
                   const Eigen::Index n = h.dimension();
                   Builder b;
                   b.model(RkhsModel::direct_sum({h, h}))
                       .op("P_const", hardy_operator(HardyKind::PConst, n))
                       .op("P_z", hardy_operator(HardyKind::PMonomial, n, 1))
                       .blocks({{"P_const", std::nullopt}, {std::nullopt, "P_z"}});
                   return b.s;
                 },
                 [](const SpecFile& s, const GridSpec& g) {
                   return Lines{line("||P||_ber", 0.536, bound_lhs("c28i", s.input, s.model, s.params, g).value, 2e-3),
                                line("c28i", 1.0, bound_rhs("c28i", s.input, s.model, s.params, g), 1e-3, true)};
                 }});

    v.push_back({"rem_eqn12", "co5 against eqn12 with A11 = A22 = E00, A12 = A21 = E01",
                 [](const ParseOptions&) {
                   Builder b;
                   b.model(two_by_two_finite()).op("E00", unit2(0, 0)).op("E01", unit2(0, 1));
                   b.blocks({{"E00", "E01"}, {"E01", "E00"}});
                   return b.s;
                 },
                 compare("co5", 1.5, 1e-9, "eqn12", 2.0, 1e-9)});

    v.push_back({"rem_R1E2", "co5 against R1E2 on an off-diagonal instance",
                 [](const ParseOptions&) {
                   Builder b;
                   b.model(two_by_two_finite()).op("B", m2(1, 1, 0, 0)).op("C", m2(1, 0, 1, 0));
                   b.blocks({{std::nullopt, "B"}, {"C", std::nullopt}});
                   return b.s;
                 },
                 compare("co5", 1.0, 1e-9, "R1E2", root2, 1e-9)});

    v.push_back({"rem_eqn14_a", "eqn14 beats lm7ii",
                 [](const ParseOptions&) {
                   Builder b;
                   b.model(two_by_two_finite()).op("B", m2(1, 1, 0, 0)).op("C", m2(1, 0, 1, 0));
                   b.blocks({{std::nullopt, "B"}, {"C", std::nullopt}});
                   return b.s;
                 },
                 compare("eqn14", 1.0, 1e-9, "lm7ii", root2, 1e-9)});

    v.push_back({"rem_eqn14_b", "lm7ii beats eqn14",
                 [](const ParseOptions&) {
                   Builder b;
                   b.model(two_by_two_finite()).op("B", unit2(0, 0)).op("C", unit2(1, 1, 2.0));
                   b.blocks({{std::nullopt, "B"}, {"C", std::nullopt}});
                   return b.s;
                 },
                 compare("eqn14", 2.0, 1e-9, "lm7ii", 1.5, 1e-9)});

    v.push_back({"rem_inq5", "inq5 against inq6 on [[A, B], [B, A]], A = E01, B = E00",
                 [](const ParseOptions&) {
                   Builder b;
                   b.model(two_by_two_finite()).op("A", unit2(0, 1)).op("B", unit2(0, 0));
                   b.blocks({{"A", "B"}, {"B", "A"}});
                   return b.s;
                 },
                 [root2](const SpecFile& s, const GridSpec& g) {
                   return Lines{line("inq5", root2, bound_rhs("inq5", s.input, s.model, s.params, g), 1e-9),
                                line("inq6", 1.5, bound_rhs("inq6", s.input, s.model, s.params, g), 0.0)};
                 }});

    v.push_back({"rem_ee5", "th7 against ee5 with A = C* = [[1,1],[0,0]], B = D* = [[0,0],[1,1]]",
                 [](const ParseOptions&) {
                   Builder b;
                   const CMatrix a = m2(1, 1, 0, 0);
                   const CMatrix bb = m2(0, 0, 1, 1);
                   b.model(two_by_two_finite()).op("A", a).op("B", bb).op("C", a.adjoint()).op("D", bb.adjoint());
                   b.blocks({{"A", "B"}, {"C", "D"}});
                   return b.s;
                 },
                 [](const SpecFile& s, const GridSpec& g) {
                   return Lines{line("th7", 2.4, bound_rhs("th7", s.input, s.model, s.params, g), 5e-2),
                                line("ee5", 3.0, bound_rhs("ee5", s.input, s.model, s.params, g), 1e-9)};
                 }});

    v.push_back({"rem_ee1", "ber^2(A1 + A2): cot9ii against ee1, A1 = E00, A2 = E01, n = r = 2",
                 [](const ParseOptions&) {
                   Builder b;
                   b.model(RkhsModel::finite_standard(2)).op("A1", unit2(0, 0)).op("A2", unit2(0, 1));
                   b.lists({"A1", "A2"}).r(2);
                   return b.s;
                 },
                 compare("cot9ii", 2.5, 1e-9, "ee1", std::sqrt(10.0), 1e-9)});

    v.push_back({"rem_ee2", "ber^2(A* B): cot10ii against ee2, r = 2",
                 [](const ParseOptions&) {
                   Builder b;
                   b.model(RkhsModel::finite_standard(2)).op("A", m2(1, 1, 0, 0)).op("B", unit2(0, 1));
                   b.lists({"A"}, {"B"}).r(2);
                   return b.s;
                 },
                 compare("cot10ii", 1.25, 1e-9, "ee2", root2, 1e-9)});

    v.push_back({"rem_ee3", "ber^4(A^(1/2) B^(1/2)): cot11ii against ee3, r = 4, s = 1/2",
                 [](const ParseOptions&) {
                   Builder b;
                   b.model(RkhsModel::finite_standard(2)).op("A", m2(0.25, 0, 0, 0.5)).op("B", m2(0.25, 0, 0, 0));
                   b.lists({"A"}, {"B"}).r(4).t(0.5);
                   return b.s;
                 },
                 [](const SpecFile& s, const GridSpec& g) {
                   const CMatrix& a = s.input.as.at(0);
                   const CMatrix& b = s.input.bs.at(0);
                   const double squared = std::pow(psd_product_baseline(a, b, s.model, g), 4);
                   const double literal = std::pow(psd_product_baseline_literal(a, b, s.model, g), 4);
                   return Lines{line("cot11ii", std::pow(2.0, -8), powered("cot11ii", s, g), 1e-12),
                                line("ee3 (squared norm)", std::pow(2.0, -6), squared, 1e-12, true),
                                line("ee3 (as printed)", std::pow(2.0, -6), literal, 1e-12, true)};
                 }});

    v.push_back({"rem_ee4", "ber^3(A): th10cor1 against ee4 on the 3x3 Jordan block, r = 3",
                 [](const ParseOptions&) {
                   CMatrix j = CMatrix::Zero(3, 3);
                   j(0, 1) = 1.0;
                   j(1, 2) = 1.0;
                   Builder b;
                   b.model(RkhsModel::finite_standard(3)).op("A", j);
                   b.lists({"A"}).r(3);
                   return b.s;
                 },
                 compare("th10cor1", 0.75, 1e-9, "ee4", 1.0, 1e-9)});
    return v;
  }();
  return ex;
}

const Example& find(std::string_view id) {
  for (const auto& e : catalog()) {
    if (e.id == id) return e;
  }
  throw Error(ErrorCode::UnknownExample, "unknown example id '" + std::string(id) + "'");
}

}  // namespace

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& e : catalog()) out.push_back(e.id);
    return out;
  }();
  return ids;
}

bool is_known_example(std::string_view id) {
  const auto& ids = example_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::string_view example_description(std::string_view id) { return find(id).description; }

SpecFile example_spec(std::string_view id, const ParseOptions& opts) {
  SpecFile s = find(id).build(opts);
  return s;
}

ExampleResult run_example(std::string_view id, const SpecFile& spec, const GridSpec& grid) {
  const Example& e = find(id);
  const auto start = std::chrono::steady_clock::now();
  ExampleResult r;
  r.id = e.id;
  r.description = e.description;
  r.lines = e.run(spec, grid);
  r.pass = std::all_of(r.lines.begin(), r.lines.end(), [](const ExampleLine& l) { return l.pass; });
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

ExampleResult run_example(std::string_view id, const ParseOptions& opts, const GridSpec& grid) {
  return run_example(id, example_spec(id, opts), grid);
}

int bound_power(std::string_view id, const BoundParams& params) {
  const BoundInfo& info = bound_info(id);
  if (info.power != 0) return info.power;
  return id == "T20" ? params.n_power : params.r;
}

}  // namespace berezin
