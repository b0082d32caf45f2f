// Truncated-series diagnostics: Olivier's test, Cesàro means, densities and
// the series equivalences.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "abel/ordered.hpp"
#include "abel/seriesdiag.hpp"
#include "common.hpp"

namespace abel::suites {

namespace {

TrajectorySeries series(std::string name, const std::vector<TrajectoryPoint>& pts) {
  TrajectorySeries s{std::move(name), {}};
  for (const TrajectoryPoint& p : pts) s.points.emplace_back(p.n, p.value);
  return s;
}

Shape draw_series_shape(Rng& rng, const SizeCaps& caps) {
  const double u = rng.uniform();
  if (u < 0.5) return Shape::scalar();
  if (u < 0.8) return Shape::vector(draw_size(rng, 1, std::max<std::size_t>(caps.dim, 1)));
  return Shape::matrix(draw_size(rng, 1, std::max<std::size_t>(caps.matrix_dim, 1)));
}

std::uint64_t draw_horizon(Rng& rng, const SizeCaps& caps, std::uint64_t lo) {
  const std::uint64_t hi = std::max<std::uint64_t>(caps.horizon, lo);
  return static_cast<std::uint64_t>(rng.uniform_int(static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi)));
}

double seed_param(Rng& rng) { return static_cast<double>(rng.bits() >> 12); }

// A positive generator of the requested shape from one of several families.
SequenceGenerator random_positive_generator(Rng& rng, const Shape& shape) {
  switch (rng.uniform_int(0, 4)) {
    case 0:
      return SequenceGenerator::make("random_decay", {{"seed", seed_param(rng)}, {"p", rng.uniform(1.1, 3.0)}}, shape);
    case 1:
      return SequenceGenerator::make("random_decreasing", {{"seed", seed_param(rng)}}, shape);
    case 2:
      return SequenceGenerator::make(
          "sparse_random", {{"seed", seed_param(rng)}, {"density", rng.uniform(0.05, 1.0)}, {"bound", 1.0}}, shape);
    case 3:
      return SequenceGenerator::make("geometric", {{"q", rng.uniform(0.2, 0.95)}}, shape);
    default:
      return SequenceGenerator::make("power_decay", {{"p", rng.uniform(0.5, 3.0)}}, shape);
  }
}

// A decreasing positive generator.
SequenceGenerator random_decreasing_generator(Rng& rng, const Shape& shape) {
  switch (rng.uniform_int(0, 2)) {
    case 0:
      return SequenceGenerator::make("random_decreasing", {{"seed", seed_param(rng)}}, shape);
    case 1:
      return SequenceGenerator::make("geometric", {{"q", rng.uniform(0.2, 0.95)}}, shape);
    default:
      return SequenceGenerator::make("power_decay", {{"p", rng.uniform(0.5, 3.0)}}, shape);
  }
}

// Olivier map: x scalar-valued for pairing, same-kind otherwise.
struct OlivierShapes {
  BilinearMap phi;
  Shape x;
  Shape y;
};
OlivierShapes draw_olivier_shapes(Rng& rng, const SizeCaps& caps) {
  const BilinearVariant v = draw_variant(rng);
  ShapePair s = draw_shapes(rng, v, caps);
  return {BilinearMap(v), s.x, s.y};
}

Outcome check_counterexample(const Json& j, double) {
  const SequenceGenerator g = generator_from_json(j.at("generator"));
  const auto from = j.at("from").get<std::uint64_t>();
  const auto to = j.at("to").get<std::uint64_t>();
  const double lo = j.at("band").at(0).get<double>();
  const double hi = j.at("band").at(1).get<double>();
  const double v = partial_sum_range(g, from, to).value();
  const double slack = std::min(v - lo, hi - v);
  Outcome o = make_outcome(slack >= 0.0, slack, "S(" + std::to_string(to) + ") - S(" + std::to_string(from) +
                                                     ") = " + fmt(v) + ", integral estimate " +
                                                     fmt(std::log(std::log(double(to))) - std::log(std::log(double(from)))));
  o.residual = v;
  return o;
}

Outcome check_olivier_fixed(const Json& j, double) {
  const BilinearMap phi(parse_bilinear_variant(j.at("phi").get<std::string>()));
  const SequenceGenerator x = generator_from_json(j.at("x"));
  const SequenceGenerator y = generator_from_json(j.at("y"));
  const auto n = j.at("n").get<std::uint64_t>();
  const double below = j.at("n_norm_x_below").get<double>();
  const OlivierRun run = olivier_run(phi, x, y, n);
  const double last = run.n_norm_x.back().value;
  const double slack = below - last;
  Outcome o = make_outcome(slack > 0.0 && run.tail_domination_holds, slack,
                           "n ||x_n|| at n = " + std::to_string(n) + " is " + fmt(last) +
                               (run.heuristic_to_zero ? "; envelope decreasing (heuristic)" : ""));
  o.residual = last;
  o.trajectories.push_back(series(x.rule() + "/phi_norm", run.trajectory));
  o.trajectories.push_back(series(x.rule() + "/n_norm_x", run.n_norm_x));
  return o;
}

// x_n = 1/n^2 with y = x: ||Phi(x_n, S_n)|| <= (pi^2 / 6) / n^2 at each checkpoint.
Outcome check_olivier_inverse_square(const Json& j, double tol) {
  const auto n = j.at("n").get<std::uint64_t>();
  const SequenceGenerator x = SequenceGenerator::make("power_decay", {{"p", 2.0}});
  const OlivierRun run = olivier_run(BilinearMap(BilinearVariant::scalar_multiply), x, x, n);
  double worst = INFINITY;
  for (const TrajectoryPoint& p : run.trajectory) {
    const double dn = static_cast<double>(p.n);
    const double bound = std::numbers::pi * std::numbers::pi / 6.0 / (dn * dn);
    worst = std::min(worst, (bound - p.value) / bound);
  }
  // n x_n = 1/n.
  for (const TrajectoryPoint& p : run.n_norm_x) {
    const double dn = static_cast<double>(p.n);
    worst = std::min(worst, -std::abs(p.value * dn - 1.0));
  }
  return make_outcome(worst >= -tol && run.tail_domination_holds, worst);
}

Json random_olivier(Rng& rng, const SizeCaps& caps) {
  const OlivierShapes s = draw_olivier_shapes(rng, caps);
  Json j;
  j["phi"] = std::string(s.phi.name());
  j["x"] = to_json(random_decreasing_generator(rng, s.x));
  j["y"] = to_json(random_positive_generator(rng, s.y));
  j["n"] = draw_horizon(rng, caps, 1);
  return j;
}

Outcome check_olivier_random(const Json& j, double tol) {
  const BilinearMap phi(parse_bilinear_variant(j.at("phi").get<std::string>()));
  const OlivierRun run = olivier_run(phi, generator_from_json(j.at("x")), generator_from_json(j.at("y")),
                                     j.at("n").get<std::uint64_t>());
  double worst = INFINITY;
  for (const TailDomination& t : run.tail_domination) worst = std::min(worst, t.slack / (1.0 + t.rhs));
  if (run.tail_domination.empty()) worst = 0.0;
  return make_outcome(worst >= -tol, worst, "0 <= Phi(x_n, sum y) <= sum Phi(x_k, y_k) over [ceil(n/2), n]");
}

Json random_cesaro(Rng& rng, const SizeCaps& caps) {
  Json j;
  j["generator"] = to_json(random_positive_generator(rng, draw_series_shape(rng, caps)));
  j["n"] = draw_horizon(rng, caps, 1);
  return j;
}

Outcome check_cesaro_identity(const Json& j, double tol) {
  const CesaroRun run = cesaro_weighted_mean(generator_from_json(j.at("generator")), j.at("n").get<std::uint64_t>(), 0.0);
  return residual_outcome(run.max_identity_residual, tol, "(1/n) sum k x_k vs S_n - (S_1 + ... + S_{n-1})/n");
}

Outcome check_cesaro_closed_forms(const Json&, double tol) {
  double worst = 0.0;
  // x_k = 2^-k: (1/n) sum k 2^-k = (2 - (n + 2) 2^-n) / n.
  const CesaroRun geo = cesaro_weighted_mean(SequenceGenerator::make("geometric", {{"q", 0.5}}), 1000, 0.01);
  for (const TrajectoryPoint& p : geo.trajectory) {
    const double dn = static_cast<double>(p.n);
    const double want = (2.0 - (dn + 2.0) * std::pow(0.5, dn)) / dn;
    worst = std::max(worst, std::abs(p.value - want) / want);
  }
  // x_k = 1: (n + 1) / 2.
  const CesaroRun one = cesaro_weighted_mean(SequenceGenerator::make("constant"), 1000, 0.0);
  for (const TrajectoryPoint& p : one.trajectory) {
    const double want = (static_cast<double>(p.n) + 1.0) / 2.0;
    worst = std::max(worst, std::abs(p.value - want) / want);
  }
  const CesaroRun zero = cesaro_weighted_mean(SequenceGenerator::make("zero"), 1000, 0.0);
  for (const TrajectoryPoint& p : zero.trajectory) worst = std::max(worst, std::abs(p.value));
  const bool verdicts = geo.heuristic_decay && !one.heuristic_decay;
  Outcome o = residual_outcome(worst, tol, "value at n = 1000 for 2^-k: " + fmt(geo.trajectory.back().value));
  o.pass = o.pass && verdicts;
  o.trajectories.push_back(series("geometric_half/cesaro_weighted", geo.trajectory));
  return o;
}

Outcome check_square_density(const Json& j, double) {
  const auto n = j.at("n").get<std::uint64_t>();
  const DensityReport r = set_density(
      [](std::uint64_t k) {
        auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(k)));
        while (s * s > k) --s;
        while ((s + 1) * (s + 1) <= k) ++s;
        return s * s == k;
      },
      n);
  // floor(sqrt(m)) / m at every checkpoint, exactly.
  bool exact = true;
  for (std::size_t i = 0; i < r.checkpoints.size(); ++i) {
    const std::uint64_t m = r.checkpoints[i];
    auto s = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(m)));
    while (s * s > m) --s;
    while ((s + 1) * (s + 1) <= m) ++s;
    exact = exact && r.counts[i] == s && r.ratios[i] == static_cast<double>(s) / static_cast<double>(m);
  }
  Outcome o = make_outcome(exact, exact ? 0.0 : -1.0, "ratio at N = " + std::to_string(n) + ": " + fmt(r.ratios.back()));
  o.residual = r.ratios.back();
  std::vector<TrajectoryPoint> pts;
  for (std::size_t i = 0; i < r.checkpoints.size(); ++i) pts.push_back({r.checkpoints[i], r.ratios[i]});
  o.trajectories.push_back(series("square_indicator/density", pts));
  return o;
}

Outcome check_simple_densities(const Json& j, double) {
  const auto n = j.at("n").get<std::uint64_t>();
  const DensityReport even = set_density([](std::uint64_t k) { return k % 2 == 0; }, n);
  const DensityReport none = set_density([](std::uint64_t) { return false; }, n);
  bool ok = true;
  for (std::size_t i = 0; i < even.checkpoints.size(); ++i) {
    const std::uint64_t m = even.checkpoints[i];
    ok = ok && even.counts[i] == m / 2 && none.counts[i] == 0 && none.ratios[i] == 0.0;
  }
  return make_outcome(ok, ok ? 0.0 : -1.0, "even ratio at N: " + fmt(even.ratios.back()));
}

// Density invariants for a seeded random index set.
Json random_density(Rng& rng, const SizeCaps& caps) {
  Json j;
  j["seed"] = rng.bits();
  j["p"] = rng.uniform(0.0, 1.0);
  j["decay"] = rng.uniform(0.0, 1.0);
  j["n"] = draw_horizon(rng, caps, 1);
  return j;
}

Outcome check_density_invariants(const Json& j, double) {
  const auto seed = j.at("seed").get<std::uint64_t>();
  const double p = j.at("p").get<double>();
  const double decay = j.at("decay").get<double>();
  const auto n = j.at("n").get<std::uint64_t>();
  auto member = [&](std::uint64_t k) {
    return unit_interval(derive_seed(seed, k)) < p * std::pow(static_cast<double>(k), -decay);
  };
  const DensityReport r = set_density(member, n);
  bool ok = true;
  std::uint64_t brute = 0;
  std::size_t next = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    if (member(k)) ++brute;
    if (k == r.checkpoints[next]) {
      const double ratio = r.ratios[next];
      ok = ok && r.counts[next] == brute && ratio >= 0.0 && ratio <= 1.0 &&
           ratio == static_cast<double>(brute) / static_cast<double>(k) && (next == 0 || r.counts[next - 1] <= brute);
      ++next;
    }
  }
  return make_outcome(ok, ok ? 0.0 : -1.0);
}

Json random_kvn(Rng& rng, const SizeCaps& caps) {
  const double bound = rng.uniform(0.5, 2.0);
  const Shape shape = draw_series_shape(rng, caps);
  Json j;
  j["generator"] = to_json(SequenceGenerator::make(
      "sparse_random",
      {{"seed", seed_param(rng)}, {"density", rng.uniform(0.05, 1.0)}, {"bound", bound},
       {"base", rng.bernoulli(0.5) ? 0.0 : rng.uniform(0.0, 0.05)}},
      shape));
  j["n"] = draw_horizon(rng, caps, 1);
  j["bound"] = bound;
  j["eps"] = {0.5, 0.1, 0.01};
  return j;
}

Outcome check_kvn(const Json& j, double tol) {
  const auto eps = j.at("eps").get<std::vector<double>>();
  std::optional<double> bound;
  if (j.contains("bound") && !j.at("bound").is_null()) bound = j.at("bound").get<double>();
  const KvnReport r = kvn_check(generator_from_json(j.at("generator")), j.at("n").get<std::uint64_t>(), eps, bound,
                                j.value("threshold", 0.01));
  const double slack = std::min(r.worst_forward_slack, r.converse_checked ? r.worst_converse_slack : INFINITY);
  Outcome o = make_outcome(r.forward_verdict && r.converse_verdict && slack >= -tol, slack,
                           std::string("forward ") + (r.forward_verdict ? "holds" : "fails") + ", converse " +
                               (r.converse_checked ? (r.converse_verdict ? "holds" : "fails") : "not checked"));
  return o;
}

Outcome check_kvn_square(const Json& j, double tol) {
  const auto n = j.at("n").get<std::uint64_t>();
  const std::vector<double> eps = {0.5, 0.1, 0.01};
  const KvnReport r = kvn_check(SequenceGenerator::make("square_indicator"), n, eps, 1.0, 0.05);
  const auto root = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
  const double want = static_cast<double>(root) / static_cast<double>(n);
  const bool density_exact = r.order_density[0].ratios.back() == want && r.norm_density[0].ratios.back() == want;
  const bool cesaro_exact = r.cesaro.back().value == want;
  Outcome o = make_outcome(density_exact && cesaro_exact && r.forward_verdict && r.converse_verdict &&
                               std::min(r.worst_forward_slack, r.worst_converse_slack) >= -tol,
                           std::min(r.worst_forward_slack, r.worst_converse_slack),
                           "A(1/2) density at n = " + std::to_string(n) + ": " + fmt(r.order_density[0].ratios.back()) +
                               ", Cesaro mean " + fmt(r.cesaro.back().value));
  o.residual = r.order_density[0].ratios.back();
  o.trajectories.push_back(series("square_indicator/cesaro", r.cesaro));
  return o;
}

Outcome check_kvn_trivial(const Json&, double tol) {
  const std::vector<double> eps = {0.5, 0.1, 0.01};
  const KvnReport zero = kvn_check(SequenceGenerator::make("zero"), 4096, eps, 1.0, 0.01);
  const KvnReport one = kvn_check(SequenceGenerator::make("constant"), 4096, eps, 1.0, 0.01);
  const bool saturated = one.cesaro.back().value == 1.0 && one.order_density[0].ratios.back() == 1.0;
  const double slack = std::min({zero.worst_forward_slack, one.worst_forward_slack, one.worst_converse_slack});
  return make_outcome(zero.forward_verdict && zero.converse_verdict && one.forward_verdict && one.converse_verdict &&
                          saturated && slack >= -tol,
                      slack);
}

Outcome check_tail_sum_geometric(const Json& j, double tol) {
  const auto n = j.at("n").get<std::uint64_t>();
  const auto horizon = j.at("horizon").get<std::uint64_t>();
  const TailSumEquivalence t = tail_sum_equivalence(SequenceGenerator::make("geometric", {{"q", 0.5}}), n, horizon);
  const double e1 = std::abs(t.weighted_sum.value() - 2.0);
  const double e2 = std::abs(t.tail_sum.value() - 2.0);
  const double worst = std::max(e1, e2);
  Outcome o = residual_outcome(worst, tol,
                               "sum n x_n = " + fmt(t.weighted_sum.value()) + ", sum of tails = " + fmt(t.tail_sum.value()) +
                                   ", identity residual " + fmt(t.residual));
  o.pass = o.pass && t.residual <= 1e-10;
  return o;
}

Json random_equivalence(Rng& rng, const SizeCaps& caps) {
  const OlivierShapes s = draw_olivier_shapes(rng, caps);
  Json j;
  j["phi"] = std::string(s.phi.name());
  j["x"] = to_json(random_decreasing_generator(rng, s.x));
  j["y"] = to_json(random_positive_generator(rng, s.y));
  j["n"] = draw_horizon(rng, caps, 1);
  return j;
}

Outcome check_equivalence(const Json& j, double tol) {
  const BilinearMap phi(parse_bilinear_variant(j.at("phi").get<std::string>()));
  const SeriesEquivalence e = abel_series_equivalence(phi, generator_from_json(j.at("x")), generator_from_json(j.at("y")),
                                                      j.at("n").get<std::uint64_t>());
  return residual_outcome(e.residual, tol);
}

Json random_tail_equivalence(Rng& rng, const SizeCaps& caps) {
  const std::uint64_t n = draw_horizon(rng, caps, 1);
  Json j;
  j["generator"] = to_json(random_positive_generator(rng, draw_series_shape(rng, caps)));
  j["n"] = n;
  j["horizon"] = n + 1 + static_cast<std::uint64_t>(rng.uniform_int(0, static_cast<std::int64_t>(n)));
  return j;
}

Outcome check_tail_equivalence(const Json& j, double tol) {
  const TailSumEquivalence t = tail_sum_equivalence(generator_from_json(j.at("generator")), j.at("n").get<std::uint64_t>(),
                                                    j.at("horizon").get<std::uint64_t>());
  return residual_outcome(t.residual, tol);
}

Outcome check_inverse_square_constant(const Json& j, double tol) {
  const SeriesEquivalence e =
      abel_series_equivalence(BilinearMap(BilinearVariant::scalar_multiply),
                              SequenceGenerator::make("power_decay", {{"p", 2.0}}), SequenceGenerator::make("constant"),
                              j.at("n").get<std::uint64_t>());
  return residual_outcome(e.residual, tol);
}

Json fixed_generator_instance(const SequenceGenerator& g) {
  Json j;
  j["generator"] = to_json(g);
  return j;
}

}  // namespace

void add_series_properties(std::vector<Property>& out) {
  out.push_back({"olivier", "abel_counterexample_band", 0.0, true,
                 [](Rng&, const SizeCaps&) {
                   Json j = fixed_generator_instance(SequenceGenerator::make("inv_n_log_n"));
                   j["from"] = 10;
                   j["to"] = 1000000;
                   j["band"] = {1.7, 1.9};
                   return j;
                 },
                 check_counterexample});
  out.push_back({"olivier", "n_x_n_decay_log_squared", 0.0, true,
                 [](Rng&, const SizeCaps&) {
                   Json j;
                   j["phi"] = "scalar_multiply";
                   j["x"] = to_json(SequenceGenerator::make("inv_n_log_sq"));
                   j["y"] = j["x"];
                   j["n"] = 1000000;
                   j["n_norm_x_below"] = 0.01;
                   return j;
                 },
                 check_olivier_fixed});
  out.push_back({"olivier", "inverse_square_bound", 1e-12, true,
                 [](Rng&, const SizeCaps&) { return Json{{"n", 1000}}; }, check_olivier_inverse_square});
  out.push_back({"olivier", "tail_window_domination", 1e-12, false, random_olivier, check_olivier_random});

  out.push_back({"cesaro", "weighted_mean_identity", 1e-10, false, random_cesaro, check_cesaro_identity});
  out.push_back({"cesaro", "closed_forms", 1e-12, true, [](Rng&, const SizeCaps&) { return Json::object(); },
                 check_cesaro_closed_forms});

  out.push_back({"density", "perfect_squares", 0.0, true,
                 [](Rng&, const SizeCaps&) { return Json{{"n", 1000000}}; }, check_square_density});
  out.push_back({"density", "even_and_empty", 0.0, true,
                 [](Rng&, const SizeCaps&) { return Json{{"n", 100000}}; }, check_simple_densities});
  out.push_back({"density", "exact_counters", 0.0, false, random_density, check_density_invariants});

  out.push_back({"kvn", "bounded_sparse_checkpoints", 1e-12, false, random_kvn, check_kvn});
  out.push_back({"kvn", "square_indicator", 1e-12, true, [](Rng&, const SizeCaps&) { return Json{{"n", 10000}}; },
                 check_kvn_square});
  out.push_back({"kvn", "zero_and_constant", 1e-12, true, [](Rng&, const SizeCaps&) { return Json::object(); },
                 check_kvn_trivial});

  out.push_back({"series-equivalence", "tail_sums_geometric", 1e-10, true,
                 [](Rng&, const SizeCaps&) { return Json{{"n", 40}, {"horizon", 200}}; }, check_tail_sum_geometric});
  out.push_back({"series-equivalence", "reconciliation", 1e-10, false, random_equivalence, check_equivalence});
  out.push_back({"series-equivalence", "tail_sum_identity", 1e-10, false, random_tail_equivalence,
                 check_tail_equivalence});
  out.push_back({"series-equivalence", "inverse_square_against_constant", 1e-12, true,
                 [](Rng&, const SizeCaps&) { return Json{{"n", 10000}}; }, check_inverse_square_constant});
}

}  // namespace abel::suites
