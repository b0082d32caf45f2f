// abelcheck: run property suites, replay failure dumps, emit instances.
//
//   abelcheck run --suite identities --trials 1000 --seed 42 --out report.json
//   abelcheck run --replay report.json
//   abelcheck generate --kind psd_chain --seed 1 --n 3 --dim 4
//
// Exit codes: 0 all properties pass, 1 a property failed, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "abel/suites.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

abel::Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw abel::UsageError("cannot read '" + path + "'");
  try {
    return abel::Json::parse(in);
  } catch (const abel::Json::exception& e) {
    throw abel::UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw abel::UsageError("cannot write '" + path + "'");
  out << text;
}

struct RunFlags {
  std::optional<std::string> suite;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::size_t> n;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> matrix_dim;
  std::optional<std::uint64_t> horizon;
  std::string out;
  std::string csv;
  std::string config;
  std::string replay;
  bool quiet = false;
};

int run(const RunFlags& f) {
  abel::Report report;
  if (!f.replay.empty()) {
    report = abel::replay(read_json(f.replay));
  } else {
    abel::SuiteConfig c;
    if (!f.config.empty()) c = abel::config_from_json(read_json(f.config));
    if (f.suite) c.suite = *f.suite;
    if (f.trials) c.trials = *f.trials;
    if (f.seed) c.seed = *f.seed;
    if (f.tol) c.tol = *f.tol;
    if (f.n) c.caps.n = *f.n;
    if (f.dim) c.caps.dim = *f.dim;
    if (f.matrix_dim) c.caps.matrix_dim = *f.matrix_dim;
    if (f.horizon) c.caps.horizon = *f.horizon;
    report = abel::run_suite(c);
  }
  if (!f.out.empty()) write_file(f.out, report.to_json().dump(2) + "\n");
  if (!f.csv.empty()) write_file(f.csv, report.trajectories_csv());
  if (!f.quiet) std::cout << report.summary();
  return report.ok() ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check summation-by-parts identities and inequalities on seeded random instances"};
  app.require_subcommand(1);

  RunFlags rf;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a property suite or replay failure dumps");
  std::string suites_help = "Suite name:";
  for (const std::string& s : abel::suite_names()) suites_help += " " + s;
  run_cmd->add_option("--suite", rf.suite, suites_help);
  run_cmd->add_option("--trials", rf.trials, "Random instances per property (default 100)");
  run_cmd->add_option("--seed", rf.seed, "64-bit master seed (default 0)");
  run_cmd->add_option("--tol", rf.tol, "Tolerance overriding every property default")->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--n", rf.n, "Longest finite sequence (default 50)");
  run_cmd->add_option("--dim", rf.dim, "Largest vector dimension (default 8)");
  run_cmd->add_option("--matrix-dim", rf.matrix_dim, "Largest matrix dimension for bilinear maps (default 6)");
  run_cmd->add_option("--horizon", rf.horizon, "Longest truncated series in random series properties (default 4096)");
  run_cmd->add_option("--out", rf.out, "Write the JSON report here");
  run_cmd->add_option("--csv", rf.csv, "Write checkpoint trajectories as CSV here");
  run_cmd->add_option("--config", rf.config, "JSON config with the same keys as the flags; flags win");
  run_cmd->add_option("--replay", rf.replay, "Re-check the instances in a failure dump or report");
  run_cmd->add_flag("--quiet", rf.quiet, "Do not print the summary");

  std::string kind;
  std::uint64_t gseed = 0;
  std::size_t gn = 5;
  std::size_t gdim = 3;
  CLI::App* gen_cmd = app.add_subcommand("generate", "Print a hypothesis-satisfying instance as JSON");
  gen_cmd->add_option("--kind", kind, "steffensen, psd_chain, pwl_convex or sequence")->required();
  gen_cmd->add_option("--seed", gseed, "Seed");
  gen_cmd->add_option("--n", gn, "Length (breakpoints for pwl_convex)");
  gen_cmd->add_option("--dim", gdim, "Matrix or vector dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run_cmd) return run(rf);
    std::cout << abel::generate_instance(kind, gseed, gn, gdim).dump(2) << "\n";
    return 0;
  } catch (const abel::UsageError& e) {
    std::cerr << "abelcheck: " << e.what() << "\n";
    return kExitUsage;
  }
}
