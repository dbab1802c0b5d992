#include <gtest/gtest.h>

#include <vector>

#include <json.hpp>

#include "humbert/direct.hpp"
#include "humbert/verify.hpp"

using namespace humbert;

namespace {

GridSpec phi3_spec(std::vector<std::pair<Scalar, Scalar>> points) {
  GridSpec spec;
  spec.function = FunctionId::Phi3;
  spec.methods = {Method::Direct, Method::Series2F1};
  spec.b_values = {1.0};
  spec.c_values = {2.0};
  spec.points = std::move(points);
  return spec;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidParameter;
}

VerificationRecord record_with(Status status, double err) {
  VerificationRecord r{};
  r.status = status;
  r.pairwise = {{Method::Direct, Method::Series2F1, err}};
  return r;
}

}  // namespace

TEST(RunGrid, SinglePointPasses) {
  const auto records = run_grid(phi3_spec({{0.5, 0.25}}), 1e-8);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].status, Status::Pass);
  ASSERT_EQ(records[0].pairwise.size(), 1u);
  EXPECT_LE(records[0].max_rel_err(), 1e-10);
}

TEST(RunGrid, ZeroArgumentIsSkippedNotFailed) {
  const auto records = run_grid(phi3_spec({{0.0, 0.25}}), 1e-8);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].status, Status::SkippedDomain);
  EXPECT_STREQ(to_string(records[0].status), "SKIPPED(domain)");
}

TEST(RunGrid, PoleIsSkipped) {
  GridSpec spec = phi3_spec({{0.5, 0.25}});
  spec.c_values = {-1.0};
  const auto records = run_grid(spec, 1e-8);
  EXPECT_EQ(records[0].status, Status::SkippedPole);
}

TEST(RunGrid, TightGateFails) {
  const auto records = run_grid(phi3_spec({{0.25, 1.0}}), 1e-16);
  EXPECT_EQ(records[0].status, Status::Fail);
}

TEST(RunGrid, OffLocusMethodsAreSkippedPerMethod) {
  GridSpec spec = phi3_spec({{0.5, 0.25}, {0.5, 0.3}});
  spec.methods = {Method::Direct, Method::Diag2F2, Method::GaussTerms};
  const auto records = run_grid(spec, 1e-9);
  EXPECT_EQ(records[0].status, Status::Pass);
  EXPECT_EQ(records[0].pairwise.size(), 3u);
  EXPECT_EQ(records[1].status, Status::SkippedDomain);
}

TEST(RunGrid, ConfigErrors) {
  EXPECT_EQ(code_of([] { run_grid(phi3_spec({}), 1e-8); }), ErrorCode::ConfigError);
  GridSpec one_method = phi3_spec({{0.5, 0.25}});
  one_method.methods = {Method::Direct};
  EXPECT_EQ(code_of([&] { run_grid(one_method, 1e-8); }), ErrorCode::ConfigError);
  GridSpec wrong = phi3_spec({{0.5, 0.25}});
  wrong.methods = {Method::Direct, Method::EqualArgs3F3};
  EXPECT_EQ(code_of([&] { run_grid(wrong, 1e-8); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { run_grid(phi3_spec({{0.5, 0.25}}), 0.0); }), ErrorCode::ConfigError);
}

TEST(RunGrid, OrderIsLexicographicAndThreadIndependent) {
  GridSpec spec;
  spec.function = FunctionId::Psi2;
  spec.methods = {Method::Direct, Method::Series2F1, Method::Phi3Shift};
  spec.a_values = {0.5, 1.0};
  spec.b_values = {0.5, 1.0, 2.5};
  spec.c_values = {1.5, 3.25};
  spec.points = {{0.25, 0.5}, {-1.0, 1.0}, {2.0, 3.0}};
  const auto one = run_grid(spec, 1e-8, 1);
  const auto four = run_grid(spec, 1e-8, 4);
  ASSERT_EQ(one.size(), 2u * 3u * 2u * 3u);
  EXPECT_EQ(one[0].params.a, Scalar(0.5));
  EXPECT_EQ(one[1].x, Scalar(-1.0));
  EXPECT_EQ(one[3].params.c, Scalar(3.25));
  EXPECT_EQ(one.back().params.a, Scalar(1.0));
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i].index, i);
  EXPECT_EQ(report_to_json(spec, one), report_to_json(spec, four));
  EXPECT_EQ(report_to_csv(one), report_to_csv(four));
  EXPECT_EQ(summarize(one).fail, 0u);
}

TEST(Summarize, Examples) {
  const std::vector<VerificationRecord> none;
  const Summary empty = summarize(none);
  EXPECT_EQ(empty.total, 0u);
  EXPECT_EQ(empty.max_rel_err, 0.0);
  EXPECT_FALSE(empty.argmax.has_value());

  const std::vector<VerificationRecord> single{record_with(Status::Pass, 3e-12)};
  const Summary s = summarize(single);
  EXPECT_EQ(s.total, 1u);
  EXPECT_EQ(s.pass, 1u);
  EXPECT_EQ(s.max_rel_err, 3e-12);
  EXPECT_EQ(s.argmax, 0u);

  const std::vector<VerificationRecord> mixed{record_with(Status::Pass, 1e-12),
                                              record_with(Status::Fail, 1e-3),
                                              record_with(Status::SkippedDomain, 0.5)};
  const Summary m = summarize(mixed);
  EXPECT_EQ(m.fail, 1u);
  EXPECT_EQ(m.skipped, 1u);
  EXPECT_EQ(m.pass + m.fail + m.skipped, m.total);
  EXPECT_EQ(m.max_rel_err, 1e-3);
  EXPECT_EQ(m.argmax, 1u);
}

TEST(GridSpecJson, ParsesAndRejects) {
  const GridSpec spec = parse_grid_spec(R"({"function": "phi3",
    "representations": ["direct", "series2f1"],
    "params": {"b": [1, [1.5, 0.25]], "c": [2]},
    "points": [[0.5, 0.25], [[1, 0.5], 1]], "gate": 1e-9,
    "ctrl": {"rel_tol": 1e-15, "max_terms": 800, "small_run": 4}})");
  EXPECT_EQ(spec.b_values.size(), 2u);
  EXPECT_EQ(spec.b_values[1], Scalar(1.5, 0.25));
  EXPECT_EQ(spec.points[1].first, Scalar(1.0, 0.5));
  EXPECT_EQ(spec.gate, 1e-9);
  EXPECT_EQ(spec.ctrl.max_terms, 800u);

  for (const char* bad : {
           R"({"function": "phi3"})",
           R"(not json)",
           R"({"function": "phi4", "representations": ["direct", "series2f1"],
               "params": {"b": [1], "c": [2]}, "points": [[1, 1]], "gate": 1e-8})",
           R"({"function": "phi3", "representations": ["direct", "series2f1"],
               "params": {"a": [1], "b": [1], "c": [2]}, "points": [[1, 1]], "gate": 1e-8})",
           R"({"function": "phi3", "representations": ["direct", "series2f1"],
               "params": {"b": [1], "c": [2]}, "points": [], "gate": 1e-8})",
       }) {
    EXPECT_EQ(code_of([&] { parse_grid_spec(bad); }), ErrorCode::ConfigError) << bad;
  }
}

TEST(Reports, CsvAndJsonShape) {
  const GridSpec spec = phi3_spec({{0.5, 0.25}});
  const auto records = run_grid(spec, 1e-8);
  const std::string csv = report_to_csv(records);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "function,method_pair,a,b,c,x_re,x_im,y_re,y_im,rel_err,status");
  EXPECT_NE(csv.find("phi3,direct/series2f1,"), std::string::npos);
  const auto j = nlohmann::json::parse(report_to_json(spec, records));
  EXPECT_EQ(j["records"].size(), 1u);
  EXPECT_EQ(j["summary"]["pass"], 1);
}

TEST(Evaluate, DispatchAndLocusChecks) {
  const ParamSet p{1.0, 1.0, 2.0};
  EXPECT_EQ(evaluate(FunctionId::Phi3, Method::Direct, p, 0.5, 0.25).value,
            phi3_direct({1.0, 2.0}, 0.5, 0.25).value);
  EXPECT_EQ(code_of([&] { evaluate(FunctionId::Phi3, Method::Diag2F2, p, 0.5, 0.3); }),
            ErrorCode::DomainError);
  EXPECT_EQ(code_of([&] { evaluate(FunctionId::Psi2, Method::EqualArgs3F3, p, 0.5, 0.3); }),
            ErrorCode::DomainError);
  EXPECT_EQ(code_of([&] { evaluate(FunctionId::Psi2, Method::Phi3Shift, {1.0, 2.0, 3.0}, 0.5, 0.3); }),
            ErrorCode::DomainError);
  EXPECT_EQ(code_of([&] { evaluate(FunctionId::Phi2, Method::GaussTerms, p, 0.5, 0.25); }),
            ErrorCode::ConfigError);
  EXPECT_EQ(function_from_name("PSI2"), FunctionId::Psi2);
  EXPECT_EQ(method_from_name("gaussterms"), Method::GaussTerms);
  EXPECT_EQ(code_of([] { method_from_name("nope"); }), ErrorCode::ConfigError);
}
