#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "motivic/cli/app.hpp"
#include "motivic/cli/json_io.hpp"
#include "motivic/cli/verify.hpp"
#include "motivic/kring/expression.hpp"

namespace {

using motivic::cli::Json;
using motivic::cli::run;
using motivic::kring::parse_ring_expression;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Json json_of(const Outcome& o) { return Json::parse(o.out); }

std::string canonical(const std::string& expr) {
  return motivic::cli::to_json(parse_ring_expression(expr)).dump();
}

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("motivic_cli_test_" + name);
  std::ofstream(path) << body;
  return path;
}

TEST(Eval, Golden) {
  auto o = call({"eval", "1/(1-1/L)", "--count", "3", "1"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "{\"count\":\"3/2\"}\n");

  o = call({"eval", "[2]*[2]"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "{\"terms\":[{\"atom\":2,\"num\":[2],\"den\":{\"Lpow\":0,\"cyclo\":[]}}]}\n");

  o = call({"eval", "1/(1-1/L)"});
  EXPECT_EQ(o.out, "{\"terms\":[{\"atom\":1,\"num\":[0,1],\"den\":{\"Lpow\":0,\"cyclo\":[1]}}]}\n");

  o = call({"eval", "1-[2]/(L+1)"});
  EXPECT_EQ(o.out,
            "{\"terms\":[{\"atom\":1,\"num\":[1],\"den\":{\"Lpow\":0,\"cyclo\":[]}},"
            "{\"atom\":2,\"num\":[1,-1],\"den\":{\"Lpow\":0,\"cyclo\":[2]}}]}\n");

  o = call({"eval", "0"});
  EXPECT_EQ(o.out, "{\"terms\":[]}\n");

  o = call({"eval", "--pretty", "1/(1-1/L)"});
  EXPECT_EQ(o.out, "L/(L - 1)\n");
}

TEST(Eval, LargeCoefficientsAreStrings) {
  const auto o = call({"eval", "100000000000*100000000000*L"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(json_of(o)["terms"][0]["num"][1], "10000000000000000000000");
}

TEST(Eval, ExitCodes) {
  EXPECT_EQ(call({"eval", "L/0"}).code, 3);
  EXPECT_EQ(call({"eval", "L+*"}).code, 3);
  EXPECT_EQ(call({"eval", "(L"}).code, 3);
  EXPECT_EQ(call({"eval", "L/(L+2)"}).code, 2);
  EXPECT_EQ(call({"eval", "L", "--count", "4", "1"}).code, 2);
  EXPECT_EQ(call({"eval"}).code, 3);
  EXPECT_EQ(call({"frobnicate"}).code, 3);
  EXPECT_EQ(call({}).code, 3);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Eval, ErrorsGoToStderr) {
  const auto o = call({"eval", "L/0"});
  EXPECT_TRUE(o.out.empty());
  EXPECT_NE(o.err.find("division-by-zero"), std::string::npos);
}

// Random ring expressions survive a round trip through the text rendering and
// their JSON is stable across calls.
TEST(Eval, RoundTripProperty) {
  std::mt19937_64 rng(20261017);
  const auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    if (depth == 0 || pick(0, 3) == 0) {
      switch (pick(0, 3)) {
        case 0: return std::to_string(pick(-5, 5));
        case 1: return "L";
        case 2: return "[" + std::to_string(pick(1, 4)) + "]";
        default: return "L^" + std::to_string(pick(-3, 3));
      }
    }
    switch (pick(0, 4)) {
      case 0: return "(" + gen(depth - 1) + "+" + gen(depth - 1) + ")";
      case 1: return "(" + gen(depth - 1) + "-" + gen(depth - 1) + ")";
      case 2: return "(" + gen(depth - 1) + ")*(" + gen(depth - 1) + ")";
      case 3: return "(" + gen(depth - 1) + ")/(L^" + std::to_string(pick(1, 4)) + "-1)";
      default: return "(" + gen(depth - 1) + ")/L";
    }
  };
  for (int i = 0; i < 150; ++i) {
    const std::string expr = gen(4);
    const auto first = call({"eval", expr});
    ASSERT_EQ(first.code, 0) << expr << ": " << first.err;
    EXPECT_EQ(call({"eval", expr}).out, first.out);
    const auto text = call({"eval", "--pretty", expr});
    ASSERT_EQ(text.code, 0);
    const std::string rendered = text.out.substr(0, text.out.size() - 1);
    EXPECT_EQ(canonical(rendered) + "\n", first.out) << expr << " rendered as " << rendered;
  }
}

TEST(Integrate, Values) {
  auto o = call({"integrate", "X^2+1", "--p", "3"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(json_of(o)["value"].dump(), canonical("1-[2]/(L+1)"));

  o = call({"integrate", "X", "--p", "5"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(json_of(o)["value"].dump(), canonical("L/(L+1)"));

  o = call({"integrate", "X^2+1", "--p", "5", "--count", "1,2"});
  const Json counts = json_of(o)["counts"];
  EXPECT_EQ(counts[0]["count"], "2/3");
  EXPECT_EQ(counts[1]["count"], "12/13");
  EXPECT_EQ(counts[1]["q"], 25);

  o = call({"integrate", "X", "--p", "3", "--s", "2"});
  EXPECT_EQ(json_of(o)["value"].dump(), canonical("L^2/(L^2+L+1)"));
}

TEST(Integrate, DecompositionAudit) {
  const auto o = call({"integrate", "X^2-3", "--p", "3"});
  ASSERT_EQ(o.code, 0);
  const Json j = json_of(o);
  EXPECT_EQ(j["value"].dump(), canonical("1-L^-1+L^-2"));
  ASSERT_FALSE(j["decomposition"].empty());
  for (const auto& e : j["decomposition"]) {
    EXPECT_TRUE(e.contains("measure"));
    EXPECT_TRUE(e.contains("contribution"));
    EXPECT_TRUE(e.contains(e["kind"] == "unit-locus" ? "order" : "order_start"));
  }
  EXPECT_LE(j["max_depth"].get<int>(), j["depth_bound"].get<int>());
}

TEST(Integrate, ExitCodes) {
  auto o = call({"integrate", "X^2", "--p", "3"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("hint: use --s"), std::string::npos);
  EXPECT_EQ(call({"integrate", "X^4+2*X^2+4", "--p", "3"}).code, 2);
  EXPECT_EQ(call({"integrate", "0", "--p", "3"}).code, 2);
  EXPECT_EQ(call({"integrate", "X", "--p", "4"}).code, 2);
  EXPECT_EQ(call({"integrate", "X", "--p", "3", "--s", "0"}).code, 2);
  EXPECT_EQ(call({"integrate", "X^^2", "--p", "3"}).code, 3);
  EXPECT_EQ(call({"integrate", "X"}).code, 3);
}

TEST(Verify, ExampleTable) {
  const auto o = call({"verify", "X^2+1", "--p-grid", "3,5", "--f-grid", "1,2", "--n", "5"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json j = json_of(o);
  EXPECT_TRUE(j["all_pass"].get<bool>());
  const std::vector<std::pair<std::uint64_t, std::string>> expected = {{3, "1"}, {9, "4/5"}, {5, "2/3"}, {25, "12/13"}};
  ASSERT_EQ(j["rows"].size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(j["rows"][i]["q"], expected[i].first);
    EXPECT_EQ(j["rows"][i]["value"], expected[i].second);
    EXPECT_EQ(j["rows"][i]["verdict"], "pass");
  }
}

TEST(Verify, LinearIntegrand) {
  const auto o = call({"verify", "X", "--p-grid", "2", "--f-grid", "1", "--n", "6"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(json_of(o)["rows"][0]["value"], "2/3");
}

TEST(Verify, TamperedValueFails) {
  const auto o = call({"verify", "X", "--p-grid", "2", "--f-grid", "1", "--n", "6", "--tamper", "1/1000"});
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(json_of(o)["rows"][0]["verdict"], "fail");
  EXPECT_FALSE(json_of(o)["all_pass"].get<bool>());
  EXPECT_EQ(call({"verify", "X", "--p-grid", "2", "--f-grid", "1", "--n", "6", "--tamper", "x"}).code, 3);
}

TEST(Verify, BudgetGivesPartialReport) {
  const auto o = call({"verify", "X", "--p-grid", "3", "--f-grid", "1,2", "--n", "4", "--budget", "100"});
  EXPECT_EQ(o.code, 2);
  const Json rows = json_of(o)["rows"];
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[0]["verdict"], "pass");
  EXPECT_EQ(rows[1]["verdict"], "budget-exceeded");
}

TEST(Verify, RamifiedPrimeIsUnsupported) {
  const auto o = call({"verify", "X^4+2*X^2+4", "--p-grid", "3,5", "--f-grid", "1", "--n", "3"});
  EXPECT_EQ(o.code, 2);
  const Json j = json_of(o);
  EXPECT_EQ(j["rows"][0]["verdict"], "unsupported");
  EXPECT_EQ(j["rows"][1]["verdict"], "pass");
  EXPECT_TRUE(j["values"][0]["value"].is_null());
}

TEST(Verify, NotSquarefreeIsRejected) {
  EXPECT_EQ(call({"verify", "X^2", "--p-grid", "3", "--f-grid", "1", "--n", "3"}).code, 2);
}

TEST(Verify, EqualCharacteristic) {
  const auto o = call({"verify", "X^2+1", "--p-grid", "3,5", "--f-grid", "1,2", "--n", "4", "--mode", "equal"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(json_of(o)["mode"], "equal");
  EXPECT_EQ(call({"verify", "X", "--mode", "weird"}).code, 3);
}

TEST(Verify, OutputIndependentOfThreads) {
  const std::vector<std::string> base = {"verify", "X^3-4", "--p-grid", "2,3", "--f-grid", "1,2", "--n", "3,4"};
  auto one = base;
  one.insert(one.end(), {"--threads", "1"});
  auto four = base;
  four.insert(four.end(), {"--threads", "4"});
  const auto a = call(one);
  const auto b = call(four);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, call(one).out);
  // Rows in grid order.
  const Json rows = json_of(a)["rows"];
  ASSERT_EQ(rows.size(), 8U);
  EXPECT_EQ(rows[0]["p"], 2);
  EXPECT_EQ(rows[3]["n"], 4);
  EXPECT_EQ(rows[3]["f_ext"], 2);
  EXPECT_EQ(rows[4]["p"], 3);
}

TEST(Verify, TimingOnlyOnRequest) {
  const std::vector<std::string> base = {"verify", "X", "--p-grid", "2", "--f-grid", "1", "--n", "3"};
  EXPECT_FALSE(json_of(call(base))["rows"][0].contains("millis"));
  auto timed = base;
  timed.push_back("--timing");
  EXPECT_TRUE(json_of(call(timed))["rows"][0].contains("millis"));
}

TEST(Verify, PrettyTable) {
  const auto o = call({"verify", "X", "--p-grid", "2", "--f-grid", "1", "--n", "6", "--pretty"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("verdict"), std::string::npos);
  EXPECT_NE(o.out.find("2/3"), std::string::npos);
  EXPECT_NE(o.out.find("all pass"), std::string::npos);
}

TEST(Config, DefaultsAndOverrides) {
  const auto path = write_temp("config.json", R"({"p-grid":[5],"f-grid":[1],"n":3,"budget":1000000,"probe-depth":10})");
  auto o = call({"--config", path.string(), "verify", "X"});
  ASSERT_EQ(o.code, 0) << o.err;
  Json rows = json_of(o)["rows"];
  ASSERT_EQ(rows.size(), 1U);
  EXPECT_EQ(rows[0]["p"], 5);
  EXPECT_EQ(rows[0]["n"], 3);

  o = call({"--config", path.string(), "verify", "X", "--p-grid", "2,3"});
  rows = json_of(o)["rows"];
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[1]["p"], 3);

  o = call({"--config", path.string(), "series", R"({"geometric":[{"coeff":1,"start":0}]})"});
  EXPECT_EQ(json_of(o)["probe"], 10);

  const auto budget = write_temp("budget.json", R"({"budget":10})");
  EXPECT_EQ(call({"--config", budget.string(), "verify", "X", "--p-grid", "2", "--f-grid", "1", "--n", "5"}).code, 2);
}

TEST(Config, Errors) {
  const auto unknown = write_temp("unknown.json", R"({"colour":"blue"})");
  EXPECT_EQ(call({"--config", unknown.string(), "eval", "1"}).code, 3);
  const auto broken = write_temp("broken.json", "{\"n\":");
  EXPECT_EQ(call({"--config", broken.string(), "eval", "1"}).code, 3);
  EXPECT_EQ(call({"--config", "/nonexistent/motivic.json", "eval", "1"}).code, 3);
}

TEST(Series, GeometricSum) {
  auto o = call({"series", R"({"head":[],"geometric":[{"coeff":1,"start":0,"ratio":1}]})", "--count", "3", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  Json j = json_of(o);
  EXPECT_EQ(j["sum"].dump(), canonical("1/(1-L^-1)"));
  EXPECT_EQ(j["count"], "3/2");
  EXPECT_EQ(j["probe"], 40);
  EXPECT_EQ(j["tail_dimension_bound"], -40);

  o = call({"series", R"({"head":["[2]", 3],"geometric":[{"coeff":"L-1","start":2,"ratio":2}]})", "--probe", "5"});
  ASSERT_EQ(o.code, 0) << o.err;
  j = json_of(o);
  EXPECT_EQ(j["sum"].dump(), canonical("[2]+3+(L-1)*L^-2/(1-L^-2)"));
}

TEST(Series, FromFile) {
  const auto path = write_temp("series.json", R"({"geometric":[{"coeff":1,"start":1,"ratio":1}]})");
  const auto o = call({"series", "@" + path.string()});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(json_of(o)["sum"].dump(), canonical("1/(L-1)"));
}

TEST(Series, ExitCodes) {
  EXPECT_EQ(call({"series", R"({"geometric":[{"coeff":"L-2","start":0}]})"}).code, 2);
  EXPECT_EQ(call({"series", R"({"geometric":[{"coeff":1,"start":0,"ratio":0}]})"}).code, 2);
  EXPECT_EQ(call({"series", R"({"geometric":[{"start":0}]})"}).code, 3);
  EXPECT_EQ(call({"series", "{"}).code, 3);
  EXPECT_EQ(call({"series", "@/nonexistent/series.json"}).code, 3);
}

TEST(Measure, Cells) {
  auto o = call({"measure", R"({"kind":"orbit","poly":[1,0,1],"level":2})", "--p", "5", "--count", "1,2"});
  ASSERT_EQ(o.code, 0) << o.err;
  Json j = json_of(o);
  EXPECT_EQ(j["measure"].dump(), canonical("2*L^-2"));
  EXPECT_EQ(j["level"], 2);
  EXPECT_EQ(j["counts"][1]["count"], "2/625");

  o = call({"measure", R"({"kind":"orbit","poly":"X^2+1","level":1})", "--p", "3"});
  EXPECT_EQ(json_of(o)["measure"].dump(), canonical("[2]*L^-1"));

  o = call({"measure", R"({"kind":"complement","of":{"kind":"disc","center":1,"radius":2}})", "--p", "3"});
  EXPECT_EQ(json_of(o)["measure"].dump(), canonical("1-L^-2"));

  o = call({"measure", R"({"kind":"refine","of":{"kind":"stratum","poly":[0,1],"order":1},"by":2})", "--p", "3"});
  EXPECT_EQ(json_of(o)["measure"].dump(), canonical("(L-1)*L^-2"));
  EXPECT_EQ(json_of(o)["level"], 4);

  o = call({"measure",
            R"({"kind":"union","cells":[{"kind":"disc","center":0,"radius":1},{"kind":"disc","center":1,"radius":1}]})",
            "--p", "3"});
  EXPECT_EQ(json_of(o)["measure"].dump(), canonical("2*L^-1"));

  o = call({"measure", R"({"kind":"product","factors":[{"kind":"disc","center":0,"radius":1},{"kind":"whole"}]})",
            "--p", "2"});
  EXPECT_EQ(json_of(o)["measure"].dump(), canonical("L^-1"));
  EXPECT_EQ(json_of(o)["d"], 2);

  o = call({"measure", R"({"kind":"strata","poly":[0,1]})", "--p", "5"});
  EXPECT_EQ(json_of(o)["measure"].dump(), canonical("1"));
}

TEST(Measure, ExitCodes) {
  const std::string overlap =
      R"({"kind":"union","cells":[{"kind":"disc","center":0,"radius":1},{"kind":"disc","center":3,"radius":2}]})";
  EXPECT_EQ(call({"measure", overlap, "--p", "3"}).code, 2);
  EXPECT_EQ(call({"measure", R"({"kind":"orbit","poly":[0,0,1],"level":1})", "--p", "3"}).code, 2);
  EXPECT_EQ(call({"measure", R"({"kind":"whatever"})", "--p", "3"}).code, 3);
  EXPECT_EQ(call({"measure", R"({"kind":"disc","center":0})", "--p", "3"}).code, 3);
  EXPECT_EQ(call({"measure", R"({"kind":"whole"})"}).code, 3);
}

}  // namespace
