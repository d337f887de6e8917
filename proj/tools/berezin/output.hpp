#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "berezin/examples.hpp"
#include "berezin/spec_file.hpp"

namespace berezin::cli {

enum class Format { Text, Json, Csv };

struct QuantityResult {
  std::string quantity;
  double value = 0.0;
  /// Complex value for point evaluations of the symbol.
  std::optional<Complex> symbol;
  std::optional<BerezinEstimate> estimate;
  bool exact = true;
};

void print_quantity(std::ostream& os, Format f, const QuantityResult& q);
void print_report(std::ostream& os, Format f, const BoundReport& r);
void print_summary(std::ostream& os, Format f, const FuzzSummary& s, const std::vector<std::string>& replay_paths);
void print_examples(std::ostream& os, Format f, const std::vector<ExampleResult>& results);

}  // namespace berezin::cli
