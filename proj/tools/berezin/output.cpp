#include "output.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace berezin::cli {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void print_quantity(std::ostream& os, Format f, const QuantityResult& q) {
  switch (f) {
    case Format::Json: {
      nlohmann::json j{{"quantity", q.quantity}, {"value", q.value}, {"exact", q.exact}};
      if (q.symbol) j["symbol"] = {q.symbol->real(), q.symbol->imag()};
      if (q.estimate) j["estimate"] = estimate_to_json(*q.estimate);
      os << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      os << "quantity,value,exact,witness\n";
      os << q.quantity << "," << num(q.value) << "," << (q.exact ? "true" : "false") << ","
         << csv_cell(q.estimate ? describe_point(q.estimate->witness) : "") << "\n";
      break;
    case Format::Text:
      os << q.quantity << " = " << num(q.value);
      if (q.symbol) os << "  (symbol " << num(q.symbol->real()) << (q.symbol->imag() < 0 ? " - " : " + ")
                       << num(std::abs(q.symbol->imag())) << "i)";
      os << "\n";
      if (q.estimate) {
        os << "witness: " << describe_point(q.estimate->witness);
        if (q.estimate->witness_mu) os << " / " << describe_point(*q.estimate->witness_mu);
        os << "\n";
        if (!q.estimate->exact) {
          os << "grid: " << q.estimate->grid_radii << " radii x " << q.estimate->grid_angles << " angles, "
             << q.estimate->grid_points << " points, " << q.estimate->refinement_iters << " refinement steps\n";
        }
      }
      os << "exact: " << (q.exact ? "yes" : "no (certified lower estimate)") << "\n";
      break;
  }
}

void print_report(std::ostream& os, Format f, const BoundReport& r) {
  switch (f) {
    case Format::Json:
      os << report_to_json(r).dump(2) << "\n";
      break;
    case Format::Csv:
      os << "bound_id,rhs,lhs,margin,tolerance,verdict,exact\n";
      os << r.bound_id << "," << num(r.rhs) << "," << num(r.lhs.value) << "," << num(r.margin) << ","
         << num(r.tolerance) << "," << to_string(r.verdict) << "," << (r.lhs.exact ? "true" : "false") << "\n";
      break;
    case Format::Text:
      os << "bound " << r.bound_id << "\n"
         << "  rhs       " << num(r.rhs) << "\n"
         << "  lhs       " << num(r.lhs.value) << (r.lhs.exact ? "" : " (grid estimate)") << "\n"
         << "  witness   " << describe_point(r.lhs.witness) << "\n"
         << "  margin    " << num(r.margin) << "\n"
         << "  tolerance " << num(r.tolerance) << "\n"
         << "  verdict   " << to_string(r.verdict) << "\n";
      break;
  }
}

void print_summary(std::ostream& os, Format f, const FuzzSummary& s, const std::vector<std::string>& replay_paths) {
  switch (f) {
    case Format::Json: {
      nlohmann::json j = summary_to_json(s);
      j["replay_specs"] = replay_paths;
      os << j.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      os << "bound_id,trials,holds,inconclusive,violations,min_margin,min_relative_margin\n";
      for (const auto& b : s.per_bound) {
        os << b.bound_id << "," << b.trials << "," << b.holds << "," << b.inconclusive << "," << b.violations << ","
           << num(b.min_margin) << "," << num(b.min_relative_margin) << "\n";
      }
      break;
    case Format::Text:
      for (const auto& b : s.per_bound) {
        os << std::left << std::setw(10) << b.bound_id << std::right << " trials " << std::setw(5) << b.trials
           << "  holds " << std::setw(5) << b.holds << "  inconclusive " << std::setw(3) << b.inconclusive
           << "  violations " << std::setw(3) << b.violations << "  min margin " << num(b.min_margin) << "\n";
      }
      os << "total: " << s.trials << " trials, " << s.holds << " hold, " << s.inconclusive << " inconclusive, "
         << s.violations.size() << " violations\n";
      for (std::size_t i = 0; i < s.violations.size(); ++i) {
        const auto& v = s.violations[i];
        os << "VIOLATION " << v.report.bound_id << " seed " << v.spec.seed << " dim " << v.spec.dim << " ensemble "
           << to_string(v.spec.ensemble) << " margin " << num(v.report.margin);
        if (!v.error.empty()) os << " error: " << v.error;
        if (i < replay_paths.size()) os << " replay: " << replay_paths[i];
        os << "\n";
      }
      break;
  }
}

void print_examples(std::ostream& os, Format f, const std::vector<ExampleResult>& results) {
  switch (f) {
    case Format::Json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : results) {
        nlohmann::json lines = nlohmann::json::array();
        for (const auto& l : r.lines) {
          lines.push_back({{"label", l.label},
                           {"expected", l.expected},
                           {"computed", l.computed},
                           {"difference", std::abs(l.computed - l.expected)},
                           {"tolerance", l.tolerance},
                           {"informational", l.informational},
                           {"pass", l.pass}});
        }
        arr.push_back({{"id", r.id}, {"description", r.description}, {"pass", r.pass}, {"seconds", r.seconds},
                       {"lines", std::move(lines)}});
      }
      os << arr.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      os << "id,label,expected,computed,difference,tolerance,status\n";
      for (const auto& r : results) {
        for (const auto& l : r.lines) {
          os << r.id << "," << csv_cell(l.label) << "," << num(l.expected) << "," << num(l.computed) << ","
             << num(std::abs(l.computed - l.expected)) << "," << num(l.tolerance) << ","
             << (l.informational ? "info" : (l.pass ? "pass" : "fail")) << "\n";
        }
      }
      break;
    case Format::Text:
      for (const auto& r : results) {
        os << r.id << "  " << r.description << "  [" << (r.pass ? "pass" : "FAIL") << ", " << std::fixed
           << std::setprecision(2) << r.seconds << " s]\n";
        os.unsetf(std::ios::floatfield);
        for (const auto& l : r.lines) {
          os << "  " << std::left << std::setw(20) << l.label << std::right << " expected " << std::setw(14)
             << num(l.expected) << "  computed " << std::setw(14) << num(l.computed) << "  |diff| " << std::setw(10)
             << num(std::abs(l.computed - l.expected)) << "  tol " << std::setw(6) << num(l.tolerance) << "  "
             << (l.informational ? "info" : (l.pass ? "pass" : "FAIL")) << "\n";
        }
      }
      break;
  }
}

}  // namespace berezin::cli
