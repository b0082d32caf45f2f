#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "abel/suites.hpp"

using namespace abel;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ABELCHECK_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string temp_path(const std::string& name) { return std::string(TEST_TMP_DIR) + "/" + name; }

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST(Suites, NamesAreComplete) {
  const std::vector<std::string> expected = {"identities", "abel-bounds", "olivier",  "cesaro",
                                             "density",    "kvn",         "series-equivalence",
                                             "positive-sum", "jensen-steffensen", "hlp", "tomic-weyl", "trace", "all"};
  EXPECT_EQ(suite_names(), expected);
}

TEST(Suites, UnknownSuiteIsUsageError) {
  SuiteConfig c;
  c.suite = "nonsense";
  EXPECT_THROW(run_suite(c), UsageError);
}

TEST(Suites, ZeroTrialsIsTriviallyPassing) {
  SuiteConfig c;
  c.trials = 0;
  const Report r = run_suite(c);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.passed(), 0u);
  for (const PropertyReport& p : r.properties) EXPECT_EQ(p.trials, 0u);
}

TEST(Suites, IdentitiesWithSeed42) {
  SuiteConfig c;
  c.suite = "identities";
  c.seed = 42;
  c.trials = 200;
  const Report r = run_suite(c);
  EXPECT_TRUE(r.ok()) << r.summary();
  for (const PropertyReport& p : r.properties) {
    if (p.worst_residual && p.name.rfind("transforms", 0) == 0) {
      EXPECT_LT(*p.worst_residual, 1e-9);
    }
  }
}

TEST(Suites, OlivierReproducesCounterexampleBand) {
  SuiteConfig c;
  c.suite = "olivier";
  c.trials = 1;
  const Report r = run_suite(c);
  EXPECT_TRUE(r.ok()) << r.summary();
  bool found = false;
  for (const PropertyReport& p : r.properties) {
    if (p.name == "abel_counterexample_band") {
      found = true;
      ASSERT_TRUE(p.worst_residual);
      EXPECT_GE(*p.worst_residual, 1.7);
      EXPECT_LE(*p.worst_residual, 1.9);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_FALSE(r.trajectories.empty());
  EXPECT_EQ(r.trajectories_csv().rfind("series,n,value\n", 0), 0u);
}

TEST(Suites, DeterministicReports) {
  SuiteConfig c;
  c.suite = "trace";
  c.trials = 20;
  c.seed = 99;
  EXPECT_EQ(run_suite(c).to_json(false).dump(), run_suite(c).to_json(false).dump());
  SuiteConfig d = c;
  d.seed = 100;
  EXPECT_NE(run_suite(c).to_json(false).dump(), run_suite(d).to_json(false).dump());
}

TEST(Suites, TightToleranceProducesReplayableFailures) {
  SuiteConfig c;
  c.suite = "identities";
  c.trials = 20;
  c.tol = 0.0;
  c.seed = 3;
  const Report r = run_suite(c);
  ASSERT_FALSE(r.ok());
  const Json j = r.to_json();
  std::size_t dumps = 0;
  for (const PropertyReport& p : r.properties) {
    EXPECT_LE(p.failures.size(), 5u);
    if (p.failed > 0) {
      EXPECT_FALSE(p.failures.empty());
    }
    dumps += p.failures.size();
  }
  const Report again = replay(j);
  EXPECT_EQ(again.failed(), dumps);
  EXPECT_EQ(again.passed(), 0u);
  // A single dump replays on its own.
  for (const Json& p : j["properties"]) {
    if (!p["failures"].empty()) {
      EXPECT_EQ(replay(p["failures"][0]).failed(), 1u);
      break;
    }
  }
}

TEST(Suites, ReplayRejectsMalformedInput) {
  EXPECT_THROW(replay(Json(3)), UsageError);
  EXPECT_THROW(replay(Json::parse(R"({"suite": "trace"})")), UsageError);
  EXPECT_THROW(replay(Json::parse(R"({"suite": "trace", "property": "nope", "instance": {}})")), UsageError);
}

TEST(Suites, ConfigMirrorsFlags) {
  const SuiteConfig c = config_from_json(Json::parse(R"({"suite": "hlp", "trials": 7, "seed": 18446744073709551615,
                                                        "tol": 1e-6, "n": 10, "dim": 3, "matrix_dim": 2,
                                                        "horizon": 100})"));
  EXPECT_EQ(c.suite, "hlp");
  EXPECT_EQ(c.trials, 7u);
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
  EXPECT_EQ(c.tol, 1e-6);
  EXPECT_EQ(c.caps.n, 10u);
  EXPECT_EQ(c.caps.dim, 3u);
  EXPECT_EQ(c.caps.matrix_dim, 2u);
  EXPECT_EQ(c.caps.horizon, 100u);
  EXPECT_THROW(config_from_json(Json::parse(R"({"bogus": 1})")), UsageError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"trials": "many"})")), UsageError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"tol": -1})")), UsageError);
  EXPECT_EQ(config_from_json(to_json(c)).seed, c.seed);
}

TEST(Generate, Kinds) {
  const Json s = generate_instance("steffensen", 1, 5, 1);
  EXPECT_EQ(s["weights"].size(), 5u);
  EXPECT_EQ(s["partials"].back(), 1.0);
  const Json p = generate_instance("psd_chain", 1, 3, 4);
  EXPECT_EQ(p["as"].size(), 3u);
  EXPECT_EQ(p["as"][0].size(), 4u);
  const Json f = generate_instance("pwl_convex", 1, 0, 1);
  EXPECT_TRUE(f["function"]["breakpoints"].empty());
  EXPECT_TRUE(f["hlp"]["terms"].empty());
  EXPECT_EQ(generate_instance("sequence", 2, 4, 3).dump(), generate_instance("sequence", 2, 4, 3).dump());
  EXPECT_THROW(generate_instance("tensor", 1, 3, 3), UsageError);
  EXPECT_THROW(generate_instance("steffensen", 1, 0, 1), UsageError);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("run --suite hlp --trials 5"), 0);
  EXPECT_EQ(run_cli("run --suite identities --trials 5 --tol 0"), 1);
  EXPECT_EQ(run_cli("run --suite nonsense"), 2);
  EXPECT_EQ(run_cli("run --trials -3"), 2);
  EXPECT_EQ(run_cli("run --tol -1"), 2);
  EXPECT_EQ(run_cli("run --config /nonexistent/config.json"), 2);
  EXPECT_EQ(run_cli("generate --kind steffensen --seed 1 --n 5"), 0);
  EXPECT_EQ(run_cli("generate --kind tensor"), 2);
  EXPECT_EQ(run_cli(""), 2);
}

TEST(Cli, ConfigFileAndFlagsWin) {
  const std::string cfg = temp_path("abel_cfg.json");
  const std::string out = temp_path("abel_report.json");
  write(cfg, R"({"suite": "nonsense", "trials": 3})");
  EXPECT_EQ(run_cli("run --config " + cfg), 2);
  EXPECT_EQ(run_cli("run --config " + cfg + " --suite hlp --out " + out), 0);
  std::ifstream in(out);
  const Json report = Json::parse(in);
  EXPECT_EQ(report["config"]["suite"], "hlp");
  EXPECT_EQ(report["config"]["trials"], 3);
  write(cfg, "not json");
  EXPECT_EQ(run_cli("run --config " + cfg), 2);
}

TEST(Cli, ReplayOfFailureReport) {
  const std::string out = temp_path("abel_failing.json");
  ASSERT_EQ(run_cli("run --suite identities --trials 5 --tol 0 --out " + out), 1);
  EXPECT_EQ(run_cli("run --replay " + out), 1);
  const std::string pass = temp_path("abel_passing.json");
  ASSERT_EQ(run_cli("run --suite hlp --trials 5 --out " + pass), 0);
  EXPECT_EQ(run_cli("run --replay " + pass), 0);
}
