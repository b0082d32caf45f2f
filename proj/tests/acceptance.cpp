// Acceptance gate: one line per criterion, nonzero exit if any fails.
//
//   acceptance [seed]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "abel/instances.hpp"
#include "abel/majorize.hpp"
#include "abel/ordered.hpp"
#include "abel/seriesdiag.hpp"
#include "abel/spectral.hpp"
#include "abel/suites.hpp"
#include "support/oracles.hpp"

using namespace abel;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::uint64_t g_seed = 2026;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Report suite(const std::string& name, std::uint64_t trials) {
  SuiteConfig c;
  c.suite = name;
  c.trials = trials;
  c.seed = g_seed;
  return run_suite(c);
}

const PropertyReport* find(const Report& r, const std::string& name) {
  for (const PropertyReport& p : r.properties) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

// Every property of the report passed; lists the failing ones otherwise.
Verdict all_passed(const Report& r) {
  Verdict v{r.ok(), {}};
  std::ostringstream s;
  s << r.passed() << " passed, " << r.failed() << " failed";
  for (const PropertyReport& p : r.properties) {
    if (p.failed > 0) s << "; " << p.name << " failed " << p.failed << "/" << p.trials;
  }
  v.detail = s.str();
  return v;
}

Verdict ac1_identities() {
  const auto t0 = std::chrono::steady_clock::now();
  const Report r = suite("identities", 1000);
  const double dt = seconds_since(t0);
  Verdict v = all_passed(r);
  double worst = 0;
  std::uint64_t transform_trials = 0;
  for (const PropertyReport& p : r.properties) {
    if (p.name.rfind("transforms_match_direct_sum/", 0) == 0) {
      transform_trials += p.trials;
      worst = std::max(worst, p.worst_residual.value_or(0.0));
    }
  }
  v.pass = v.pass && transform_trials == 6000 && dt < 10.0;
  v.detail += ", 6 variants x 1000, worst residual " + num(worst) + ", " + num(dt) + " s (limit 10 s)";
  return v;
}

Verdict ac2_bounds() {
  const Report r = suite("abel-bounds", 1000);
  Verdict v = all_passed(r);
  const PropertyReport* a = find(r, "abel_inequality");
  const PropertyReport* b = find(r, "bilinear_sandwich");
  v.pass = v.pass && a && b && a->trials == 1000 && b->trials == 1000;
  return v;
}

Verdict ac3_olivier() {
  const auto t0 = std::chrono::steady_clock::now();
  const OlivierRun run = olivier_run(BilinearMap(BilinearVariant::scalar_multiply),
                                     SequenceGenerator::make("inv_n_log_sq"), SequenceGenerator::make("inv_n_log_sq"),
                                     1000000);
  const double nxn = run.n_norm_x.back().value;
  const double band = partial_sum_range(SequenceGenerator::make("inv_n_log_n"), 10, 1000000).value();
  const Report r = suite("olivier", 1);
  const double dt = seconds_since(t0);
  Verdict v = all_passed(r);
  v.pass = v.pass && run.n_norm_x.back().n == 1000000 && nxn < 0.01 && band >= 1.7 && band <= 1.9 && dt < 30.0;
  v.detail = "n x_n at 1e6 = " + num(nxn) + ", S(1e6) - S(10) = " + num(band) + "; suite " + v.detail + ", " +
             num(dt) + " s (limit 30 s)";
  return v;
}

Verdict ac4_cesaro() {
  const Report r = suite("cesaro", 100);
  Verdict v = all_passed(r);
  const PropertyReport* p = find(r, "weighted_mean_identity");
  v.pass = v.pass && p && p->trials == 100;
  if (p) v.detail += ", worst identity residual " + num(p->worst_residual.value_or(0)) + " (limit 1e-10)";
  return v;
}

Verdict ac5_kvn() {
  const Report r = suite("kvn", 100);
  Verdict v = all_passed(r);
  const double eps[] = {0.5};
  const KvnReport sq = kvn_check(SequenceGenerator::make("square_indicator"), 10000, eps, 1.0, 0.05);
  const double density = sq.norm_density[0].ratios.back();
  const double expected = std::floor(std::sqrt(10000.0)) / 10000.0;
  const PropertyReport* p = find(r, "bounded_sparse_checkpoints");
  v.pass = v.pass && p && p->trials == 100 && density == expected && sq.cesaro.back().value == expected;
  v.detail += ", A(1/2) density at 1e4 = " + num(density) + " (expected " + num(expected) + ")";
  return v;
}

Verdict ac6_series() {
  const Report r = suite("series-equivalence", 100);
  Verdict v = all_passed(r);
  const TailSumEquivalence t = tail_sum_equivalence(SequenceGenerator::make("geometric", {{"q", 0.5}}), 40, 200);
  const double e1 = std::abs(t.weighted_sum.value() - 2.0);
  const double e2 = std::abs(t.tail_sum.value() - 2.0);
  const PropertyReport* p = find(r, "reconciliation");
  v.pass = v.pass && e1 <= 1e-10 && e2 <= 1e-10 && p && p->worst_residual.value_or(1) <= 1e-10;
  v.detail += ", |sum n x_n - 2| = " + num(e1) + ", |sum tails - 2| = " + num(e2) + ", worst reconciliation " +
              num(p ? p->worst_residual.value_or(0) : -1);
  return v;
}

Verdict ac7_js() {
  const Report r = suite("jensen-steffensen", 1000);
  Verdict v = all_passed(r);
  const PropertyReport* s = find(r, "scalar_registry");
  const PropertyReport* a = find(r, "affine_equality");
  const PropertyReport* m = find(r, "vector_lattice");
  v.pass = v.pass && s && a && m && s->trials == 1000 && a->tol == 1e-12 && s->tol == 1e-10 && m->tol == 1e-10;
  if (a) v.detail += ", affine max |slack| " + num(a->tol - a->worst_slack) + " (limit 1e-12)";
  return v;
}

Verdict ac8_hlp() {
  const Report r = suite("hlp", 500);
  Verdict v = all_passed(r);
  const PropertyReport* p = find(r, "round_trip");
  v.pass = v.pass && p && p->trials == 500 && find(r, "hand_decompositions");
  if (p) v.detail += ", worst relative sup error " + num(p->worst_residual.value_or(0));
  return v;
}

Verdict ac9_trace() {
  const auto t0 = std::chrono::steady_clock::now();
  const Report r = suite("trace", 500);
  const double dt = seconds_since(t0);
  Verdict v = all_passed(r);
  const PropertyReport* e = find(r, "eigen_reconstruction");
  v.pass = v.pass && dt < 20.0 && e && e->worst_residual.value_or(1) <= 1e-10;
  v.detail += ", worst reconstruction " + num(e ? e->worst_residual.value_or(0) : -1) + ", " + num(dt) +
              " s (limit 20 s)";
  return v;
}

Verdict ac10_oracles() {
  Rng rng(derive_seed(g_seed, 10));
  std::mt19937_64 sampler(derive_seed(g_seed, 11));
  int matrix_agree = 0;
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 3));
    const Matrix q = random_orthogonal(rng, n);
    Eigen::VectorXd l(static_cast<Eigen::Index>(n));
    const int mode = t % 4;
    for (Eigen::Index i = 0; i < l.size(); ++i) {
      const double mag = rng.uniform(0.2, 1.0);
      l(i) = mode == 0 ? mag : mode == 1 ? -mag : mode == 2 ? (i % 2 == 0 ? mag : -mag) : 0.0;
    }
    const Matrix a = random_symmetric(rng, n);
    const Matrix b = symmetrized(a + q * l.asDiagonal() * q.transpose());
    const oracle::Verdict o = oracle::sampled_loewner(a, b, sampler, 1000);
    const Relation r = compare(Element::matrix(a), Element::matrix(b), kMatrixOrderTol).relation;
    matrix_agree += (o == oracle::Verdict::less_equal && r == Relation::less_equal) ||
                    (o == oracle::Verdict::greater_equal && r == Relation::greater_equal) ||
                    (o == oracle::Verdict::equal && r == Relation::equal) ||
                    (o == oracle::Verdict::incomparable && r == Relation::incomparable);
  }
  int maj_agree = 0;
  int maj_total = 0;
  int maj_yes = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 6));
    std::vector<double> x;
    std::vector<double> y;
    if (t % 2 == 0) {
      const instances::MajorizationPair p = instances::submajorized_pair(rng, n, true, -2, 2);
      x = p.x;
      y = p.y;
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        x.push_back(rng.dyadic(-2, 2));
        y.push_back(rng.dyadic(-2, 2));
      }
      x.back() += std::accumulate(y.begin(), y.end(), 0.0) - std::accumulate(x.begin(), x.end(), 0.0);
    }
    const MajorizationResult m = submajorize_check(x, y);
    const bool brute = oracle::subset_weak_majorization(x, y) && oracle::convex_test_majorization(x, y);
    ++maj_total;
    maj_agree += m.strong == brute;
    maj_yes += brute;
  }
  Verdict v;
  v.pass = matrix_agree == 200 && maj_agree == maj_total;
  v.detail = "Loewner vs 1e3-direction sampling " + std::to_string(matrix_agree) + "/200; strong majorization vs "
             "brute force " + std::to_string(maj_agree) + "/" + std::to_string(maj_total) + " (" +
             std::to_string(maj_yes) + " majorized)";
  return v;
}

Verdict ac11_determinism() {
  const Report a = suite("all", 100);
  const Report b = suite("all", 100);
  const std::string ja = a.to_json(false).dump();
  const std::string jb = b.to_json(false).dump();
  Verdict v;
  v.pass = ja == jb;
  v.detail = std::to_string(ja.size()) + " bytes, " + (v.pass ? "identical" : "different") + " modulo timing";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_seed = std::strtoull(argv[1], nullptr, 10);
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"AC1  identity transforms", ac1_identities},
      {"AC2  Abel and bilinear bounds", ac2_bounds},
      {"AC3  Olivier test and Abel counterexample", ac3_olivier},
      {"AC4  weighted Cesaro identity", ac4_cesaro},
      {"AC5  density checkpoint inequalities", ac5_kvn},
      {"AC6  series equivalence", ac6_series},
      {"AC7  Jensen-Steffensen", ac7_js},
      {"AC8  HLP round trip", ac8_hlp},
      {"AC9  trace suite", ac9_trace},
      {"AC10 oracle cross-checks", ac10_oracles},
      {"AC11 determinism", ac11_determinism},
  };
  int failed = 0;
  std::printf("acceptance, seed %llu\n", static_cast<unsigned long long>(g_seed));
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
