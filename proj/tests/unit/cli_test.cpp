#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "congruence/cli_app.hpp"
#include "congruence/json_io.hpp"

using namespace congruence;
using cli::JobSpec;
using cli::run_job;
using json::Json;

namespace {

const std::filesystem::path kGolden = GOLDEN_DIR;

JobSpec job(std::string command, std::string input, std::optional<uint64_t> seed = std::nullopt) {
  JobSpec j;
  j.command = std::move(command);
  j.input = std::move(input);
  j.seed = seed;
  return j;
}

const char* kDiagOnes = R"({
  "field": {"kind": "tower", "p": 5},
  "config": {"N": 4, "sym": [[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]], "alt": [], "col": {"rows": 4, "cols": 0, "entries": [[],[],[],[]]}},
  "target": {"l": 1, "sym": [[[3]]], "alt": [], "col": {"rows": 1, "cols": 0, "entries": [[]]}}
})";

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, WitnessOnDiagonalOnes) {
  const auto res = run_job(job("witness", kDiagOnes, 1));
  ASSERT_EQ(res.exit_code, 0) << res.output;
  const Json out = Json::parse(res.output);
  EXPECT_TRUE(out["report"]["passed"].get<bool>());
  EXPECT_TRUE(out["curve"]["ranks_certified"].get<bool>());
}

TEST(Cli, RankOfEmptyTupleIsInfinity) {
  const auto res = run_job(job("rank", R"({"tuple": {"size": 3, "matrices": []}})"));
  ASSERT_EQ(res.exit_code, 0);
  EXPECT_EQ(Json::parse(res.output)["value"], "infinity");
}

TEST(Cli, RankWithTruncation) {
  const auto res = run_job(job("rank", R"({"tuple": {"size": 3, "kinds": ["symmetric"], "matrices": [[[1,0,0],[0,1,0],[0,0,1]]]}, "truncate": 2})"));
  ASSERT_EQ(res.exit_code, 0);
  const Json out = Json::parse(res.output);
  EXPECT_EQ(out["value"], 3);
  EXPECT_EQ(out["minimal_truncation"], 2);
}

TEST(Cli, WitnessOutputFeedsVerifyUnchanged) {
  const auto w = run_job(job("witness", kDiagOnes, 2));
  ASSERT_EQ(w.exit_code, 0);
  const auto v = run_job(job("verify", w.output));
  EXPECT_EQ(v.exit_code, 0) << v.output;
  EXPECT_TRUE(Json::parse(v.output)["passed"].get<bool>());
}

TEST(Cli, GenOutputFeedsWitnessAndVerify) {
  for (const char* gen : {R"({"p":1,"q":1,"n":1,"l":1})", R"({"generator":"density"})"}) {
    const auto g = run_job(job("gen", gen, 7));
    ASSERT_EQ(g.exit_code, 0) << g.output;
    const auto w = run_job(job("witness", g.output, 8));
    ASSERT_EQ(w.exit_code, 0) << w.output;
    const auto v = run_job(job("verify", w.output));
    EXPECT_EQ(v.exit_code, 0) << v.output;
  }
}

TEST(Cli, TamperedCurveExitsOne) {
  const auto w = run_job(job("witness", kDiagOnes, 3));
  Json doc = Json::parse(w.output);
  doc["curve"]["det"]["degree"] = doc["curve"]["det"]["degree"].get<int>() + 1;
  const auto v = run_job(job("verify", doc.dump()));
  EXPECT_EQ(v.exit_code, 1);
  EXPECT_FALSE(Json::parse(v.output)["passed"].get<bool>());
}

TEST(Cli, MalformedInputExitsTwo) {
  for (const char* bad : {"{", "[1,2]", R"({"tuple": 3})", R"({"field": {"kind": "tower", "p": 4}, "tuple": {"size": 1, "matrices": []}})",
                          R"({"tuple": {"size": 2, "kinds": ["symmetric"], "matrices": [[[1,2],[3,4]]]}})"}) {
    const auto res = run_job(job("rank", bad));
    EXPECT_EQ(res.exit_code, 2) << bad;
    EXPECT_TRUE(Json::parse(res.output).contains("error"));
  }
  EXPECT_EQ(run_job(job("frobnicate", "{}")).exit_code, 2);
}

TEST(Cli, RandomizedCommandsNeedASeed) {
  const auto res = run_job(job("witness", kDiagOnes));
  EXPECT_EQ(res.exit_code, 2);
  EXPECT_EQ(Json::parse(res.output)["error"]["code"], "malformed_input");
}

TEST(Cli, LowRankExitsThree) {
  const char* low = R"({
    "field": {"kind": "tower", "p": 5},
    "config": {"N": 3, "sym": [[[1,0,0],[0,1,0],[0,0,0]]], "alt": [], "col": {"rows": 3, "cols": 0, "entries": [[],[],[]]}},
    "target": {"l": 1, "sym": [[[1]]], "alt": [], "col": {"rows": 1, "cols": 0, "entries": [[]]}}
  })";
  const auto res = run_job(job("witness", low, 1));
  EXPECT_EQ(res.exit_code, 3) << res.output;
  EXPECT_EQ(Json::parse(res.output)["error"]["code"], "rank_precondition");
}

TEST(Cli, NormalFormOfMatrix) {
  const auto res = run_job(job("normal-form", R"({"matrix": [[0,1],[1,0]], "kind": "symmetric"})"));
  ASSERT_EQ(res.exit_code, 0);
  const Json out = Json::parse(res.output);
  EXPECT_EQ(out["rank"], 2);
  const Field f = json::decode_field(out["field"]);
  EXPECT_EQ(json::decode_matrix(f, out["canonical"]), ScalarMatrix::identity(f, 2));
}

TEST(Cli, NormalFormOfPlantedTuple) {
  const auto g = run_job(job("gen", R"({"generator": "planted", "kinds": ["symmetric", "skew"], "l": 1})", 4));
  ASSERT_EQ(g.exit_code, 0) << g.output;
  const auto nf = run_job(job("normal-form", g.output));
  ASSERT_EQ(nf.exit_code, 0) << nf.output;
  EXPECT_TRUE(Json::parse(nf.output)["pattern_ok"].get<bool>());
}

TEST(Cli, RationalScalarsRoundTrip) {
  const Field q = Field::rational();
  const Scalar x = q.from_rational(mpq_class(-7, 3));
  EXPECT_EQ(json::decode_scalar(q, json::encode(x)), x);
  const Field f = Field::tower(7);
  const Scalar y = sqrt(f.from_int(3));
  EXPECT_EQ(json::decode_scalar(f, json::encode(y)), y);
}

TEST(Cli, OutputIsDeterministic) {
  const auto a = run_job(job("witness", kDiagOnes, 5));
  const auto b = run_job(job("witness", kDiagOnes, 5));
  EXPECT_EQ(a.output, b.output);
  const auto e1 = run_job(job("experiment", R"({"p":1,"instances":3})", 6));
  JobSpec threaded = job("experiment", R"({"p":1,"instances":3})", 6);
  threaded.jobs = 3;
  EXPECT_EQ(e1.output, run_job(threaded).output);
}

struct GoldenCase {
  const char* name;
  const char* command;
  std::optional<uint64_t> seed;
};

class Golden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, MatchesStoredOutput) {
  const GoldenCase& c = GetParam();
  const auto res = run_job(job(c.command, read_file(kGolden / (std::string(c.name) + ".in.json")), c.seed));
  const auto expected_path = kGolden / (std::string(c.name) + ".out");
  if (std::getenv("CONGRUENCE_UPDATE_GOLDEN")) {
    std::ofstream(expected_path) << res.output;
    GTEST_SKIP() << "golden file rewritten";
  }
  ASSERT_TRUE(std::filesystem::exists(expected_path)) << expected_path;
  EXPECT_EQ(res.output, read_file(expected_path));
}

INSTANTIATE_TEST_SUITE_P(Cli, Golden,
                         ::testing::Values(GoldenCase{"rank_pencil", "rank", std::nullopt},
                                           GoldenCase{"normal_form_skew", "normal-form", std::nullopt},
                                           GoldenCase{"witness_diag", "witness", 11},
                                           GoldenCase{"gen_config", "gen", 12},
                                           GoldenCase{"experiment_small", "experiment", 13}),
                         [](const auto& info) { return std::string(info.param.name); });
