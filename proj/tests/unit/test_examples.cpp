#include <gtest/gtest.h>

#include <cmath>

#include "berezin/error.hpp"
#include "berezin/examples.hpp"

using namespace berezin;

namespace {

std::string fixture(std::string_view id) { return std::string(BEREZIN_FIXTURE_DIR) + "/" + std::string(id) + ".json"; }

bool is_hardy_example(std::string_view id) { return id.starts_with("ex_"); }

}  // namespace

TEST(Fixtures, MatchTheCatalog) {
  ParseOptions small;
  small.hardy_dim = 24;
  for (const auto& id : example_ids()) {
    const SpecFile file = load_spec(fixture(id), small);
    const SpecFile built = example_spec(id, small);
    EXPECT_EQ(file.model.describe(), built.model.describe()) << id;
    EXPECT_EQ(file.operators.size(), built.operators.size()) << id;
    for (const auto& [name, op] : built.operators) {
      ASSERT_TRUE(file.operators.count(name)) << id << " " << name;
      EXPECT_EQ(file.operators.at(name), op) << id << " " << name;
    }
    EXPECT_EQ(file.params.t, built.params.t) << id;
    EXPECT_EQ(file.params.r, built.params.r) << id;
  }
}

TEST(Examples, FiniteComparisonsPass) {
  for (const auto& id : example_ids()) {
    if (is_hardy_example(id)) continue;
    const ExampleResult r = run_example(id);
    EXPECT_TRUE(r.pass) << id;
    for (const auto& l : r.lines) {
      if (!l.informational) EXPECT_LE(std::abs(l.computed - l.expected), l.tolerance) << id << " " << l.label;
    }
  }
}

TEST(Examples, HardyExamplesPass) {
  for (const auto& id : example_ids()) {
    if (!is_hardy_example(id)) continue;
    const ExampleResult r = run_example(id);
    EXPECT_TRUE(r.pass) << id;
  }
}

TEST(Examples, PositiveProductBaselineIsInformational) {
  const ExampleResult r = run_example("rem_ee3");
  std::size_t info = 0;
  for (const auto& l : r.lines) info += l.informational ? 1 : 0;
  EXPECT_EQ(info, 2u);
  EXPECT_TRUE(r.pass);
}

TEST(Examples, UnknownId) {
  EXPECT_FALSE(is_known_example("rem_nope"));
  try {
    run_example("rem_nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownExample);
  }
  EXPECT_EQ(example_ids().size(), 13u);
}

TEST(Examples, BoundPowerResolvesParams) {
  BoundParams p;
  p.r = 3;
  p.n_power = 5;
  EXPECT_EQ(bound_power("co5", p), 1);
  EXPECT_EQ(bound_power("th5", p), 2);
  EXPECT_EQ(bound_power("th9", p), 3);
  EXPECT_EQ(bound_power("T20", p), 5);
  EXPECT_EQ(bound_power("th10", p), 3);
}
