#include <gtest/gtest.h>

#include <string>

#include "berezin/error.hpp"
#include "berezin/spec_file.hpp"

using namespace berezin;

namespace {

ErrorCode parse_code(std::string_view text, std::string* message = nullptr) {
  try {
    parse_spec(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "parsed without error";
  return ErrorCode::BadSpec;
}

constexpr const char* kTwoByTwo = R"({
  "model": {"kind": "direct_sum", "factors": [{"kind": "finite_standard", "dim": 2},
                                              {"kind": "finite_standard", "dim": 2}]},
  "operators": {"A": {"entries": [[1, 0], [0, 0]]},
                "B": {"entries": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]}},
  "blocks": [["A", "B"], ["B", "A"]],
  "params": {"t": 0.5, "alpha": [3, 4]},
  "target": "co5"
})";

}  // namespace

TEST(Parse, BlockSpec) {
  const SpecFile s = parse_spec(kTwoByTwo);
  EXPECT_EQ(s.model.dimension(), 4);
  ASSERT_EQ(s.input.blocks.n(), 2u);
  EXPECT_EQ(s.input.blocks(0, 1)(0, 1), Complex(1.0));
  EXPECT_EQ(s.input.blocks(1, 1)(0, 0), Complex(1.0));
  EXPECT_EQ(s.params.alpha, Complex(3.0, 4.0));
  EXPECT_EQ(s.target.value_or(""), "co5");
}

TEST(Parse, NullBlocksAreZero) {
  const SpecFile s = parse_spec(R"({
    "model": {"kind": "power", "factor": {"kind": "finite_standard", "dim": 3}, "count": 2},
    "operators": {"A": {"entries": [[1, 2, 3], [0, 1, 0], [0, 0, 1]]}},
    "blocks": [[null, "A"], ["A", null]]
  })");
  EXPECT_EQ(s.input.blocks(0, 0), CMatrix::Zero(3, 3));
  EXPECT_EQ(s.input.blocks(1, 0)(0, 2), Complex(3.0));
  EXPECT_EQ(s.model.dimension(), 6);
}

TEST(Parse, HardyOperatorsAndOverrides) {
  constexpr const char* text = R"({
    "model": {"kind": "hardy", "dim": 400, "r_max": 0.999},
    "operators": {"P": {"hardy": "P_monomial", "index": 2}}
  })";
  const SpecFile full = parse_spec(text);
  EXPECT_EQ(full.subject_operator().rows(), 400);
  ParseOptions opts;
  opts.hardy_dim = 16;
  opts.hardy_r_max = 0.9;
  const SpecFile small = parse_spec(text, opts);
  EXPECT_EQ(small.subject_operator().rows(), 16);
  EXPECT_EQ(small.subject_operator()(2, 2), Complex(1.0));
  EXPECT_EQ(small.model.dimension(), 16);
}

TEST(Parse, LineAndColumnOnSyntaxError) {
  std::string msg;
  EXPECT_EQ(parse_code("{\n  \"model\": {\"kind\": \"finite_standard\", \"dim\": 2},\n  \"operators\": {,}\n}", &msg),
            ErrorCode::ParseError);
  EXPECT_NE(msg.find("3:"), std::string::npos) << msg;
}

TEST(Parse, StructuralErrorsNameThePath) {
  std::string msg;
  EXPECT_EQ(parse_code(R"({"model": {"kind": "finite_standard", "dim": 2},
                           "operators": {"A": {"entries": [[1, 0], [0]]}}})",
                       &msg),
            ErrorCode::DimensionMismatch);
  EXPECT_NE(msg.find("/operators/A"), std::string::npos) << msg;

  EXPECT_EQ(parse_code(R"({"model": {"kind": "nope"}})", &msg), ErrorCode::ParseError);
  EXPECT_NE(msg.find("/model"), std::string::npos) << msg;

  EXPECT_EQ(parse_code(R"({"model": {"kind": "finite_standard", "dim": 2},
                           "operators": {"A": {"entries": [[1, 0], [0, 1]]}},
                           "blocks": [["A", "Q"], ["Q", "A"]]})"),
            ErrorCode::ParseError);
  EXPECT_EQ(parse_code("[1, 2]"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code(""), ErrorCode::ParseError);
}

TEST(Parse, ShapeErrorsKeepTheirCodes) {
  EXPECT_EQ(parse_code(R"({"model": {"kind": "finite_standard", "dim": 3},
                           "operators": {"A": {"entries": [[1, 0], [0, 1]]},
                                         "B": {"entries": [[1]]}},
                           "blocks": [["A", "B"], ["B", "A"]]})"),
            ErrorCode::NonConformalBlocks);
}

TEST(RoundTrip, SpecToJsonReparses) {
  const SpecFile s = parse_spec(kTwoByTwo);
  const SpecFile back = parse_spec(spec_to_json(s).dump());
  EXPECT_EQ(assemble_block(back.input.blocks), assemble_block(s.input.blocks));
  EXPECT_EQ(back.model.describe(), s.model.describe());
  EXPECT_EQ(back.params.alpha, s.params.alpha);
  EXPECT_EQ(back.target, s.target);
}

TEST(RoundTrip, FuzzTrialReplaysIdentically) {
  FuzzConfig cfg;
  for (const char* id : {"th4", "co5", "th9", "cot11comm", "T20", "ee3"}) {
    for (std::uint64_t seed : {0u, 7u, 29u}) {
      const InstanceSpec is = fuzz_spec(id, Ensemble::ComplexGaussian, seed, cfg);
      const BoundReport direct = replay(id, is);
      const SpecFile s = parse_spec(spec_to_json(spec_for_trial(id, is)).dump());
      const BoundReport again = evaluate_bound(id, s.input, s.model, s.params);
      EXPECT_EQ(report_to_json(direct).dump(), report_to_json(again).dump()) << id << " seed " << seed;
    }
  }
}

TEST(Serialize, ModelRoundTrip) {
  const RkhsModel m = RkhsModel::direct_sum({RkhsModel::hardy(20, 0.9), RkhsModel::finite_standard(3)});
  EXPECT_EQ(model_from_json(model_to_json(m)).describe(), m.describe());
}
