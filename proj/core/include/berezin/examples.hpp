#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "berezin/spec_file.hpp"

namespace berezin {

// Catalog of the worked examples and baseline comparisons with their reference
// values. Each example is a spec (also shipped as fixtures/<id>.json) plus a
// list of quantities evaluated on it.

struct ExampleLine {
  std::string label;
  double expected = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  /// Reported only; never fails the example.
  bool informational = false;
  bool pass = true;
};

struct ExampleResult {
  std::string id;
  std::string description;
  std::vector<ExampleLine> lines;
  bool pass = true;
  double seconds = 0.0;
};

const std::vector<std::string>& example_ids();
bool is_known_example(std::string_view id);
std::string_view example_description(std::string_view id);

/// The example's instance; Hardy truncation can be overridden.
SpecFile example_spec(std::string_view id, const ParseOptions& opts = {});

/// Evaluates example `id` on `spec` (normally example_spec(id)).
ExampleResult run_example(std::string_view id, const SpecFile& spec, const GridSpec& grid = {});
ExampleResult run_example(std::string_view id, const ParseOptions& opts = {}, const GridSpec& grid = {});

/// Power the bound's left side carries (resolving r / n_power).
int bound_power(std::string_view id, const BoundParams& params);

}  // namespace berezin
