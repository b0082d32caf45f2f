#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "common.hpp"

namespace abel {

namespace {

constexpr std::size_t kMaxDumps = 5;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t trial_seed(std::uint64_t seed, const Property& p, std::uint64_t trial) {
  return derive_seed(seed, fnv1a(p.suite + "/" + p.name), trial);
}

bool known_suite(const std::string& name) {
  const std::vector<std::string> names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

PropertyReport empty_report(const Property& p, double tol) {
  PropertyReport r;
  r.suite = p.suite;
  r.name = p.name;
  r.fixed = p.fixed;
  r.tol = tol;
  r.worst_slack = std::numeric_limits<double>::infinity();
  return r;
}

// Exceptions thrown by a check are failures, not aborts.
Outcome check_instance(const Property& p, const Json& instance, double tol) {
  try {
    return p.check(instance, tol);
  } catch (const std::exception& e) {
    Outcome o;
    o.pass = false;
    o.slack = -std::numeric_limits<double>::infinity();
    o.detail = std::string("exception: ") + e.what();
    return o;
  }
}

void record(PropertyReport& r, const Property& p, const Outcome& o, const Json& instance, std::uint64_t trial) {
  ++r.trials;
  r.worst_slack = std::min(r.worst_slack, o.slack);
  if (o.residual) r.worst_residual = std::max(r.worst_residual.value_or(0.0), *o.residual);
  if (o.pass) {
    ++r.passed;
    return;
  }
  ++r.failed;
  if (r.failures.size() < kMaxDumps) {
    Json dump;
    dump["suite"] = p.suite;
    dump["property"] = p.name;
    dump["tol"] = r.tol;
    dump["trial"] = trial;
    dump["instance"] = instance;
    dump["detail"] = o.detail;
    r.failures.push_back(std::move(dump));
  }
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::uint64_t Report::passed() const {
  std::uint64_t n = 0;
  for (const PropertyReport& p : properties) n += p.passed;
  return n;
}

std::uint64_t Report::failed() const {
  std::uint64_t n = 0;
  for (const PropertyReport& p : properties) n += p.failed;
  return n;
}

Json Report::to_json(bool with_timing) const {
  Json j;
  j["config"] = abel::to_json(config);
  j["ok"] = ok();
  j["passed"] = passed();
  j["failed"] = failed();
  Json props = Json::array();
  for (const PropertyReport& p : properties) {
    Json q;
    q["suite"] = p.suite;
    q["name"] = p.name;
    q["fixed"] = p.fixed;
    q["tol"] = p.tol;
    q["trials"] = p.trials;
    q["passed"] = p.passed;
    q["failed"] = p.failed;
    q["worst_slack"] = p.trials == 0 ? Json(nullptr) : finite_or_null(p.worst_slack);
    q["worst_residual"] = p.worst_residual ? finite_or_null(*p.worst_residual) : Json(nullptr);
    q["failures"] = p.failures;
    props.push_back(std::move(q));
  }
  j["properties"] = std::move(props);
  Json traj = Json::array();
  for (const TrajectorySeries& s : trajectories) {
    Json pts = Json::array();
    for (const auto& [n, v] : s.points) pts.push_back({n, finite_or_null(v)});
    traj.push_back({{"name", s.name}, {"points", std::move(pts)}});
  }
  j["trajectories"] = std::move(traj);
  if (with_timing) j["timing"] = {{"runtime_seconds", runtime_seconds}};
  return j;
}

std::string Report::summary() const {
  std::ostringstream s;
  for (const PropertyReport& p : properties) {
    s << (p.failed == 0 ? "PASS " : "FAIL ") << p.suite << "/" << p.name << "  " << p.passed << "/" << p.trials;
    if (p.trials > 0) s << "  worst slack " << full_precision(p.worst_slack);
    if (p.worst_residual) s << "  worst residual " << full_precision(*p.worst_residual);
    s << "\n";
    for (const Json& f : p.failures) s << "    trial " << f["trial"].dump() << ": " << f["detail"].get<std::string>() << "\n";
  }
  s << (ok() ? "OK" : "FAILED") << ": " << passed() << " passed, " << failed() << " failed, " << properties.size()
    << " properties";
  if (runtime_seconds > 0.0) s << ", " << full_precision(runtime_seconds) << " s";
  s << "\n";
  return s.str();
}

std::string Report::trajectories_csv() const {
  std::ostringstream s;
  s << "series,n,value\n";
  for (const TrajectorySeries& t : trajectories) {
    for (const auto& [n, v] : t.points) s << t.name << "," << n << "," << full_precision(v) << "\n";
  }
  return s.str();
}

Report run_suite(const SuiteConfig& config) {
  if (!known_suite(config.suite)) throw UsageError("unknown suite '" + config.suite + "'");
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.config = config;
  for (const Property& p : all_properties()) {
    if (config.suite != "all" && p.suite != config.suite) continue;
    const double tol = config.tol.value_or(p.default_tol);
    PropertyReport r = empty_report(p, tol);
    const std::uint64_t trials = p.fixed ? std::min<std::uint64_t>(config.trials, 1) : config.trials;
    for (std::uint64_t t = 0; t < trials; ++t) {
      Rng rng(trial_seed(config.seed, p, t));
      Json instance;
      Outcome o;
      try {
        instance = p.generate(rng, config.caps);
        o = check_instance(p, instance, tol);
      } catch (const std::exception& e) {
        o.pass = false;
        o.slack = -std::numeric_limits<double>::infinity();
        o.detail = std::string("generation failed: ") + e.what();
      }
      record(r, p, o, instance, t);
      for (TrajectorySeries& s : o.trajectories) report.trajectories.push_back(std::move(s));
    }
    report.properties.push_back(std::move(r));
  }
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Report replay(const Json& dump) {
  std::vector<Json> dumps;
  if (dump.is_array()) {
    dumps.assign(dump.begin(), dump.end());
  } else if (dump.is_object() && dump.contains("properties")) {
    for (const Json& p : dump.at("properties")) {
      if (!p.contains("failures")) continue;
      for (const Json& f : p.at("failures")) dumps.push_back(f);
    }
  } else if (dump.is_object()) {
    dumps.push_back(dump);
  } else {
    throw UsageError("replay input must be a failure dump, a list of dumps or a report");
  }
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.config.suite = "replay";
  report.config.trials = dumps.size();
  for (const Json& d : dumps) {
    if (!d.is_object() || !d.contains("suite") || !d.contains("property") || !d.contains("instance")) {
      throw UsageError("malformed failure dump: " + d.dump());
    }
    const Property& p = find_property(d.at("suite").get<std::string>(), d.at("property").get<std::string>());
    const double tol = d.contains("tol") ? d.at("tol").get<double>() : p.default_tol;
    auto it = std::find_if(report.properties.begin(), report.properties.end(),
                           [&](const PropertyReport& r) { return r.suite == p.suite && r.name == p.name; });
    if (it == report.properties.end()) {
      report.properties.push_back(empty_report(p, tol));
      it = std::prev(report.properties.end());
    }
    const std::uint64_t trial = d.contains("trial") ? d.at("trial").get<std::uint64_t>() : 0;
    record(*it, p, check_instance(p, d.at("instance"), tol), d.at("instance"), trial);
  }
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SuiteConfig config_from_json(const Json& j, SuiteConfig base) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "suite") {
        base.suite = value.get<std::string>();
      } else if (key == "trials") {
        base.trials = value.get<std::uint64_t>();
      } else if (key == "seed") {
        base.seed = value.get<std::uint64_t>();
      } else if (key == "tol") {
        if (value.is_null()) {
          base.tol.reset();
        } else {
          const double t = value.get<double>();
          if (!(t >= 0.0)) throw UsageError("tol must be >= 0");
          base.tol = t;
        }
      } else if (key == "n") {
        base.caps.n = value.get<std::size_t>();
      } else if (key == "dim") {
        base.caps.dim = value.get<std::size_t>();
      } else if (key == "matrix_dim") {
        base.caps.matrix_dim = value.get<std::size_t>();
      } else if (key == "horizon") {
        base.caps.horizon = value.get<std::uint64_t>();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  return base;
}

Json to_json(const SuiteConfig& c) {
  Json j;
  j["suite"] = c.suite;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["tol"] = c.tol ? Json(*c.tol) : Json(nullptr);
  j["n"] = c.caps.n;
  j["dim"] = c.caps.dim;
  j["matrix_dim"] = c.caps.matrix_dim;
  j["horizon"] = c.caps.horizon;
  return j;
}

}  // namespace abel
