#include "berezin/spec_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "berezin/error.hpp"

namespace berezin {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, path + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing key '") + key + "'");
  return *it;
}

double as_real(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Eigen::Index as_index(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<Eigen::Index>();
}

Complex as_complex(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(path, "expected a number or [re, im]");
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

CVector vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of entries");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = as_complex(j[i], path + "/" + std::to_string(i));
  return v;
}

CMatrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) fail(path + "/0", "expected a non-empty row");
  const std::size_t cols = j[0].size();
  CMatrix a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    if (!j[r].is_array()) fail(rp, "expected a row");
    if (j[r].size() != cols) {
      throw Error(ErrorCode::DimensionMismatch, rp + ": row has " + std::to_string(j[r].size()) + " entries, expected " +
                                                    std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = as_complex(j[r][c], rp + "/" + std::to_string(c));
    }
  }
  require_finite(a, path);
  return a;
}

HardyKind hardy_kind(const std::string& name, const std::string& path) {
  if (name == "Mz") return HardyKind::Mz;
  if (name == "Mz2") return HardyKind::Mz2;
  if (name == "P_const") return HardyKind::PConst;
  if (name == "P_monomial") return HardyKind::PMonomial;
  fail(path, "unknown Hardy operator '" + name + "'");
}

std::optional<Eigen::Index> hardy_dim_of(const RkhsModel& m) {
  for (const RkhsModel* leaf : m.leaves()) {
    if (const auto* h = std::get_if<HardyTruncated>(&leaf->variant())) return h->dim;
  }
  return std::nullopt;
}

RkhsModel model_at(const json& j, const std::string& path, const ParseOptions& opts) {
  const std::string kind = member(j, "kind", path).get<std::string>();
  if (kind == "finite_standard") return RkhsModel::finite_standard(as_index(member(j, "dim", path), path + "/dim"));
  if (kind == "hardy") {
    Eigen::Index dim = default_hardy_dim;
    double r_max = default_hardy_r_max;
    if (j.contains("dim")) dim = as_index(j["dim"], path + "/dim");
    if (j.contains("r_max")) r_max = as_real(j["r_max"], path + "/r_max");
    if (opts.hardy_dim) dim = *opts.hardy_dim;
    if (opts.hardy_r_max) r_max = *opts.hardy_r_max;
    return RkhsModel::hardy(dim, r_max);
  }
  if (kind == "finite_general") {
    const json& ks = member(j, "kernels", path);
    if (!ks.is_array()) fail(path + "/kernels", "expected an array");
    std::vector<CVector> kernels;
    for (std::size_t i = 0; i < ks.size(); ++i) kernels.push_back(vector_from_json(ks[i], path + "/kernels/" + std::to_string(i)));
    return RkhsModel::finite_general(std::move(kernels));
  }
  if (kind == "direct_sum") {
    const json& fs = member(j, "factors", path);
    if (!fs.is_array()) fail(path + "/factors", "expected an array");
    std::vector<RkhsModel> factors;
    for (std::size_t i = 0; i < fs.size(); ++i) factors.push_back(model_at(fs[i], path + "/factors/" + std::to_string(i), opts));
    return RkhsModel::direct_sum(std::move(factors));
  }
  if (kind == "power") {
    const Eigen::Index count = as_index(member(j, "count", path), path + "/count");
    if (count < 1) fail(path + "/count", "must be >= 1");
    return RkhsModel::power(model_at(member(j, "factor", path), path + "/factor", opts), static_cast<std::size_t>(count));
  }
  fail(path + "/kind", "unknown model kind '" + kind + "'");
}

CMatrix operator_at(const json& j, const std::string& path, const RkhsModel& model) {
  if (!j.is_object()) fail(path, "expected an object");
  if (j.contains("entries")) return matrix_from_json(j["entries"], path + "/entries");
  if (j.contains("hardy")) {
    const HardyKind kind = hardy_kind(j["hardy"].get<std::string>(), path + "/hardy");
    const auto dim = hardy_dim_of(model);
    if (!dim) fail(path, "Hardy operator in a model without Hardy factors");
    const Eigen::Index index = j.contains("index") ? as_index(j["index"], path + "/index") : 0;
    return hardy_operator(kind, *dim, index);
  }
  fail(path, "operator needs 'entries' or 'hardy'");
}

std::vector<std::string> name_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of operator names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) fail(path + "/" + std::to_string(i), "expected an operator name");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

const CMatrix& lookup(const SpecFile& s, const std::string& name, const std::string& path) {
  const auto it = s.operators.find(name);
  if (it == s.operators.end()) fail(path, "unknown operator '" + name + "'");
  return it->second;
}

void parse_params(const json& j, SpecFile& s) {
  const std::string path = "/params";
  if (!j.is_object()) fail(path, "expected an object");
  BoundParams& p = s.params;
  if (j.contains("t")) p.t = as_real(j["t"], path + "/t");
  if (j.contains("alpha")) p.alpha = as_complex(j["alpha"], path + "/alpha");
  if (j.contains("beta")) p.beta = as_complex(j["beta"], path + "/beta");
  if (j.contains("r")) p.r = static_cast<int>(as_index(j["r"], path + "/r"));
  if (j.contains("n_power")) p.n_power = static_cast<int>(as_index(j["n_power"], path + "/n_power"));
  if (j.contains("fg")) {
    const std::string fg = j["fg"].get<std::string>();
    if (fg == "power") {
      p.fg = power_pair(p.t);
    } else if (fg == "shifted_root") {
      p.fg = shifted_root_pair();
    } else {
      fail(path + "/fg", "unknown function pair '" + fg + "'");
    }
    s.fg_name = fg;
  }
}

std::size_t line_col(std::string_view text, std::size_t byte, std::size_t& col) {
  std::size_t line = 1;
  col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return line;
}

}  // namespace

const CMatrix& SpecFile::subject_operator() const {
  if (subject) return lookup(*this, *subject, "/operator");
  if (operators.size() == 1) return operators.begin()->second;
  throw Error(ErrorCode::BadSpec, "spec has several operators; name one with \"operator\"");
}

RkhsModel model_from_json(const json& j, const ParseOptions& opts) { return model_at(j, "/model", opts); }

SpecFile parse_spec(std::string_view text, const ParseOptions& opts) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t col = 0;
    const std::size_t line = line_col(text, e.byte, col);
    std::string msg = e.what();
    if (const auto pos = msg.find("] "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw Error(ErrorCode::ParseError, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }

  try {
    if (!doc.is_object()) fail("/", "expected an object");
    SpecFile s;
    s.model = model_at(member(doc, "model", ""), "/model", opts);

    if (doc.contains("operators")) {
      const json& ops = doc["operators"];
      if (!ops.is_object()) fail("/operators", "expected an object");
      for (const auto& [name, body] : ops.items()) s.operators[name] = operator_at(body, "/operators/" + name, s.model);
    }
    if (doc.contains("operator")) {
      s.subject = doc["operator"].get<std::string>();
      lookup(s, *s.subject, "/operator");
    }
    if (doc.contains("target")) s.target = doc["target"].get<std::string>();
    if (doc.contains("params")) parse_params(doc["params"], s);

    if (doc.contains("blocks")) {
      const json& rows = doc["blocks"];
      if (!rows.is_array() || rows.empty()) fail("/blocks", "expected a non-empty array of rows");
      const std::size_t n = rows.size();
      const auto factors = block_factors(s.model, n);
      std::vector<std::vector<CMatrix>> grid(n, std::vector<CMatrix>(n));
      s.block_names.assign(n, std::vector<std::optional<std::string>>(n));
      for (std::size_t i = 0; i < n; ++i) {
        const std::string rp = "/blocks/" + std::to_string(i);
        if (!rows[i].is_array() || rows[i].size() != n) {
          throw Error(ErrorCode::NonConformalBlocks, rp + ": block layout must be square");
        }
        for (std::size_t k = 0; k < n; ++k) {
          const json& cell = rows[i][k];
          const std::string cp = rp + "/" + std::to_string(k);
          if (cell.is_null()) {
            grid[i][k] = CMatrix::Zero(factors[i].dimension(), factors[k].dimension());
          } else if (cell.is_string()) {
            s.block_names[i][k] = cell.get<std::string>();
            grid[i][k] = lookup(s, *s.block_names[i][k], cp);
          } else {
            fail(cp, "expected an operator name or null");
          }
        }
      }
      s.input.blocks = BlockMatrix(std::move(grid));
      const auto& rd = s.input.blocks.row_dims();
      for (std::size_t i = 0; i < n; ++i) {
        if (rd[i] != factors[i].dimension()) {
          throw Error(ErrorCode::DimensionMismatch, "/blocks: summand " + std::to_string(i) + " has dimension " +
                                                        std::to_string(rd[i]) + " but the model factor has " +
                                                        std::to_string(factors[i].dimension()));
        }
      }
    }

    if (doc.contains("lists")) {
      const json& l = doc["lists"];
      if (!l.is_object()) fail("/lists", "expected an object");
      auto fill = [&](const char* key, std::vector<std::string>& names, std::vector<CMatrix>& out) {
        if (!l.contains(key)) return;
        names = name_list(l[key], std::string("/lists/") + key);
        for (const auto& name : names) out.push_back(lookup(s, name, std::string("/lists/") + key));
      };
      fill("as", s.as_names, s.input.as);
      fill("bs", s.bs_names, s.input.bs);
      fill("xs", s.xs_names, s.input.xs);
    } else if (s.subject || s.operators.size() == 1) {
      s.as_names = {s.subject ? *s.subject : s.operators.begin()->first};
      s.input.as = {s.subject_operator()};
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid spec: ") + e.what());
  }
}

SpecFile load_spec(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_spec(buf.str(), opts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) {
      std::string msg = e.what();
      const std::string prefix = std::string(to_string(ErrorCode::ParseError)) + ": ";
      if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
      throw Error(ErrorCode::ParseError, path + ":" + msg);
    }
    throw;
  }
}

json matrix_to_json(const CMatrix& a) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(complex_json(a(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json model_to_json(const RkhsModel& m) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteStandard>) {
          return {{"kind", "finite_standard"}, {"dim", v.dim}};
        } else if constexpr (std::is_same_v<T, HardyTruncated>) {
          return {{"kind", "hardy"}, {"dim", v.dim}, {"r_max", v.r_max}};
        } else if constexpr (std::is_same_v<T, FiniteGeneral>) {
          json ks = json::array();
          for (const auto& k : v.kernels) {
            json e = json::array();
            for (Eigen::Index i = 0; i < k.size(); ++i) e.push_back(complex_json(k(i)));
            ks.push_back(std::move(e));
          }
          return {{"kind", "finite_general"}, {"kernels", std::move(ks)}};
        } else {
          json fs = json::array();
          for (const auto& f : v.factors) fs.push_back(model_to_json(f));
          return {{"kind", "direct_sum"}, {"factors", std::move(fs)}};
        }
      },
      m.variant());
}

json params_to_json(const BoundParams& p, std::string_view fg_name) {
  json j{{"t", p.t}, {"alpha", complex_json(p.alpha)}, {"beta", complex_json(p.beta)}, {"r", p.r},
         {"n_power", p.n_power}};
  if (!fg_name.empty()) j["fg"] = std::string(fg_name);
  return j;
}

json spec_to_json(const SpecFile& s) {
  json j;
  j["model"] = model_to_json(s.model);
  json ops = json::object();
  for (const auto& [name, a] : s.operators) ops[name] = {{"entries", matrix_to_json(a)}};
  j["operators"] = std::move(ops);
  if (!s.block_names.empty()) {
    json rows = json::array();
    for (const auto& row : s.block_names) {
      json r = json::array();
      for (const auto& cell : row) r.push_back(cell ? json(*cell) : json(nullptr));
      rows.push_back(std::move(r));
    }
    j["blocks"] = std::move(rows);
  }
  if (!s.as_names.empty() || !s.bs_names.empty() || !s.xs_names.empty()) {
    json l = json::object();
    if (!s.as_names.empty()) l["as"] = s.as_names;
    if (!s.bs_names.empty()) l["bs"] = s.bs_names;
    if (!s.xs_names.empty()) l["xs"] = s.xs_names;
    j["lists"] = std::move(l);
  }
  j["params"] = params_to_json(s.params, s.fg_name);
  if (s.subject) j["operator"] = *s.subject;
  if (s.target) j["target"] = *s.target;
  return j;
}

SpecFile spec_for_trial(std::string_view id, const InstanceSpec& spec) {
  SpecFile s;
  s.model = model_for_bound(id, spec);
  s.input = instance_for_bound(id, spec);
  s.params = params_for_bound(id, spec);
  s.target = std::string(id);
  if (s.params.fg) s.fg_name = s.params.fg->name;
  const BlockMatrix& b = s.input.blocks;
  s.block_names.assign(b.n(), std::vector<std::optional<std::string>>(b.n()));
  for (std::size_t i = 0; i < b.n(); ++i) {
    for (std::size_t k = 0; k < b.n(); ++k) {
      const std::string name = "B" + std::to_string(i) + std::to_string(k);
      s.operators[name] = b(i, k);
      s.block_names[i][k] = name;
    }
  }
  auto name_all = [&](const std::string& prefix, const std::vector<CMatrix>& list, std::vector<std::string>& names) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      names.push_back(prefix + std::to_string(i));
      s.operators[names.back()] = list[i];
    }
  };
  name_all("A", s.input.as, s.as_names);
  name_all("L", s.input.bs, s.bs_names);
  name_all("X", s.input.xs, s.xs_names);
  return s;
}

json point_to_json(const RkhsPoint& p) {
  json coords = json::array();
  for (const auto& c : p.coords) {
    if (const auto* idx = std::get_if<std::size_t>(&c)) {
      coords.push_back(*idx);
    } else {
      coords.push_back(complex_json(std::get<Complex>(c)));
    }
  }
  return coords;
}

json estimate_to_json(const BerezinEstimate& e) {
  json j{{"value", e.value}, {"witness", point_to_json(e.witness)}, {"exact", e.exact}};
  if (e.witness_mu) j["witness_mu"] = point_to_json(*e.witness_mu);
  if (e.via_positivity) j["via_positivity"] = true;
  if (!e.exact) {
    j["grid"] = {{"radii", e.grid_radii}, {"angles", e.grid_angles}, {"points", e.grid_points},
                 {"refinement_iters", e.refinement_iters}};
  }
  return j;
}

json report_to_json(const BoundReport& r) {
  return {{"bound_id", r.bound_id}, {"rhs", r.rhs},         {"lhs", estimate_to_json(r.lhs)},
          {"margin", r.margin},     {"tolerance", r.tolerance}, {"verdict", std::string(to_string(r.verdict))},
          {"params", params_to_json(r.params, r.params.fg ? r.params.fg->name : std::string())}};
}

json instance_spec_to_json(const InstanceSpec& s) {
  return {{"seed", s.seed},         {"dim", s.dim},     {"n_blocks", s.n_blocks},      {"scale", s.scale},
          {"ensemble", std::string(to_string(s.ensemble))}, {"label", s.label}, {"rectangular", s.rectangular}};
}

json summary_to_json(const FuzzSummary& s) {
  json per = json::array();
  for (const auto& b : s.per_bound) {
    per.push_back({{"bound_id", b.bound_id},
                   {"trials", b.trials},
                   {"holds", b.holds},
                   {"inconclusive", b.inconclusive},
                   {"violations", b.violations},
                   {"min_margin", b.min_margin},
                   {"min_relative_margin", b.min_relative_margin}});
  }
  json viol = json::array();
  for (const auto& v : s.violations) {
    json e{{"instance", instance_spec_to_json(v.spec)}, {"report", report_to_json(v.report)}};
    if (!v.error.empty()) e["error"] = v.error;
    viol.push_back(std::move(e));
  }
  return {{"trials", s.trials},     {"holds", s.holds},   {"inconclusive", s.inconclusive},
          {"violations", std::move(viol)}, {"min_margin", s.min_margin}, {"per_bound", std::move(per)}};
}

}  // namespace berezin
