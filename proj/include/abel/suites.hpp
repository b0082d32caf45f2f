#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abel/json_io.hpp"
#include "abel/random.hpp"

namespace abel {

/// Bad suite name, unreadable config or malformed replay file.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SizeCaps {
  /// Longest finite sequence.
  std::size_t n = 50;
  /// Largest vector dimension.
  std::size_t dim = 8;
  /// Largest matrix dimension.
  std::size_t matrix_dim = 6;
  /// Longest truncated series in the randomized series properties.
  std::uint64_t horizon = 4096;
};

struct SuiteConfig {
  std::string suite = "all";
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  /// Overrides every property's default tolerance when set.
  std::optional<double> tol;
  SizeCaps caps;
};

struct TrajectorySeries {
  std::string name;
  std::vector<std::pair<std::uint64_t, double>> points;
};

struct Outcome {
  bool pass = false;
  /// Margin by which the property held (negative on failure), in the
  /// property's own units.
  double slack = 0.0;
  std::optional<double> residual;
  std::string detail;
  /// Checkpoint trajectories worth plotting (fixed properties only).
  std::vector<TrajectorySeries> trajectories;
};

/// One checkable statement. Randomized properties draw an instance per
/// trial; fixed ones have a single deterministic instance and run once.
struct Property {
  std::string suite;
  std::string name;
  double default_tol = 0.0;
  bool fixed = false;
  std::function<Json(Rng&, const SizeCaps&)> generate;
  std::function<Outcome(const Json& instance, double tol)> check;
};

/// Every property, grouped by suite in a fixed order.
const std::vector<Property>& all_properties();
std::vector<std::string> suite_names();
const Property& find_property(const std::string& suite, const std::string& name);

struct PropertyReport {
  std::string suite;
  std::string name;
  bool fixed = false;
  double tol = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  double worst_slack = 0.0;
  std::optional<double> worst_residual;
  /// Replayable dumps of the first failing instances.
  std::vector<Json> failures;
};

struct Report {
  SuiteConfig config;
  std::vector<PropertyReport> properties;
  std::vector<TrajectorySeries> trajectories;
  double runtime_seconds = 0.0;

  std::uint64_t passed() const;
  std::uint64_t failed() const;
  bool ok() const { return failed() == 0; }

  /// Deterministic content; timing lives under the trailing "timing" key and
  /// is omitted when `with_timing` is false.
  Json to_json(bool with_timing = true) const;
  std::string summary() const;
  /// CSV with header series,n,value.
  std::string trajectories_csv() const;
};

/// Runs the suite; throws UsageError for an unknown suite name.
Report run_suite(const SuiteConfig& config);

/// Re-checks every instance embedded in a failure dump, a list of dumps or a
/// whole report.
Report replay(const Json& dump);

/// Hypothesis-satisfying instance for the CLI `generate` command.
/// Kinds: steffensen, psd_chain, pwl_convex, sequence.
Json generate_instance(const std::string& kind, std::uint64_t seed, std::size_t n, std::size_t dim);

/// Parses the JSON config file format (mirrors the CLI flags).
SuiteConfig config_from_json(const Json& j, SuiteConfig base = {});
Json to_json(const SuiteConfig& c);

}  // namespace abel
