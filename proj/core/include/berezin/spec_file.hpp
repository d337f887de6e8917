#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "berezin/bounds.hpp"
#include "berezin/verify.hpp"

namespace berezin {

// Operator spec files are JSON documents:
//
//   {
//     "model":     {"kind": "hardy", "dim": 400, "r_max": 0.999}
//                | {"kind": "finite_standard", "dim": 2}
//                | {"kind": "finite_general", "kernels": [[[re, im], ...], ...]}
//                | {"kind": "direct_sum", "factors": [<model>, ...]}
//                | {"kind": "power", "factor": <model>, "count": n},
//     "operators": {"A": {"hardy": "Mz" | "Mz2" | "P_const" | "P_monomial", "index": k}
//                   "B": {"entries": [[[re, im], ...], ...]}},   // rows
//     "blocks":    [["A", null], [null, "B"]],                   // null = zero
//     "lists":     {"as": ["A"], "bs": [...], "xs": [...]},
//     "params":    {"t": 0.5, "alpha": [2, 0], "beta": 2, "r": 1, "n_power": 2,
//                   "fg": "power" | "shifted_root"},
//     "operator":  "A",        // subject of single-operator commands
//     "target":    "co5"       // optional default bound id
//   }
//
// Real scalars may be written as plain numbers wherever [re, im] is accepted.

struct SpecFile {
  RkhsModel model = RkhsModel::finite_standard(1);
  std::map<std::string, CMatrix> operators;
  BoundInput input;
  BoundParams params;
  std::optional<std::string> subject;
  std::optional<std::string> target;
  /// Names used by the block layout and lists, kept for re-serialization.
  std::vector<std::vector<std::optional<std::string>>> block_names;
  std::vector<std::string> as_names, bs_names, xs_names;
  std::string fg_name;

  /// The operator named by "operator", or the only operator in the file.
  const CMatrix& subject_operator() const;
};

struct ParseOptions {
  /// Override every Hardy factor's truncation.
  std::optional<Eigen::Index> hardy_dim;
  std::optional<double> hardy_r_max;
};

/// Throws Error(ParseError) with a "line:col" prefix for malformed JSON and a
/// JSON-path prefix for structural problems; shape errors raise the matching
/// block/dimension error codes.
SpecFile parse_spec(std::string_view text, const ParseOptions& opts = {});
SpecFile load_spec(const std::string& path, const ParseOptions& opts = {});

nlohmann::json model_to_json(const RkhsModel& m);
RkhsModel model_from_json(const nlohmann::json& j, const ParseOptions& opts = {});
nlohmann::json matrix_to_json(const CMatrix& a);

/// Serialization with every operator written as explicit entries.
nlohmann::json spec_to_json(const SpecFile& s);

/// Self-contained spec reproducing one fuzz trial of bound `id`.
SpecFile spec_for_trial(std::string_view id, const InstanceSpec& spec);

nlohmann::json point_to_json(const RkhsPoint& p);
nlohmann::json estimate_to_json(const BerezinEstimate& e);
nlohmann::json params_to_json(const BoundParams& p, std::string_view fg_name = {});
nlohmann::json report_to_json(const BoundReport& r);
nlohmann::json instance_spec_to_json(const InstanceSpec& s);
nlohmann::json summary_to_json(const FuzzSummary& s);

}  // namespace berezin
