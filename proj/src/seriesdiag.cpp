#include "abel/seriesdiag.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "abel/error.hpp"
#include "abel/ordered.hpp"
#include "abel/random.hpp"

namespace abel {

namespace {

constexpr double kPureRelative = 1.0;
constexpr double kTinyFloor = 1e-300;

double param(const GeneratorParams& p, const std::string& rule, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw DomainError("generator '" + rule + "' needs parameter '" + key + "'");
  return it->second;
}

double param_or(const GeneratorParams& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

std::uint64_t seed_of(const GeneratorParams& p, const std::string& rule) {
  const double s = param(p, rule, "seed");
  if (s < 0 || s != std::floor(s)) throw DomainError("generator seed must be a nonnegative integer");
  return static_cast<std::uint64_t>(s);
}

// Independent uniform in [0, 1) per (seed, coordinate, n, stream).
double hashed_unit(std::uint64_t seed, std::size_t coord, std::uint64_t n, std::uint64_t stream) {
  return unit_interval(derive_seed(seed, coord, n, stream));
}

bool is_perfect_square(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

const std::vector<std::string> kRules = {
    "zero",          "constant",     "power_decay",       "geometric",     "inv_n_log_n", "inv_n_log_sq",
    "square_indicator", "random_decay", "random_decreasing", "sparse_random", "tabulated",
};

bool is_random_rule(const std::string& rule) {
  return rule == "random_decay" || rule == "random_decreasing" || rule == "sparse_random";
}

std::size_t coordinate_count(const Shape& s) { return s.kind == Kind::scalar ? 1 : s.dim; }

Element from_coordinates(const Shape& shape, std::vector<double> coords) {
  switch (shape.kind) {
    case Kind::scalar:
      return Element::scalar(coords[0]);
    case Kind::vector:
      return Element::vector(std::move(coords));
    case Kind::symmetric_matrix:
      return Element::diagonal(coords);
  }
  throw DomainError("unknown element kind");
}

void require_nonneg(const Element& e, std::uint64_t n, std::string_view what) {
  if (!less_equal(Element::zero(e.shape()), e, hypothesis_tol(e.kind()))) {
    std::ostringstream msg;
    msg << what << " term " << n << " is not >= 0";
    throw PreconditionError(msg.str(), n);
  }
}

void require_step_decreasing(const Element& prev, const Element& cur, std::uint64_t n, std::string_view what) {
  if (!less_equal(cur, prev, hypothesis_tol(cur.kind()))) {
    std::ostringstream msg;
    msg << what << " is not decreasing at index " << n - 1 << " (x_" << n - 1 << " >= x_" << n << " fails)";
    throw PreconditionError(msg.str(), n - 1);
  }
}

// Rounding slack for order comparisons between two computed elements.
double rounding_slack(const Shape& s, double scale) {
  const double rel = s.kind == Kind::symmetric_matrix ? kMatrixOrderTol : 1e-12;
  return rel * (1.0 + scale);
}

}  // namespace

void Neumaier::add(double v) {
  const double t = sum + v;
  if (std::abs(sum) >= std::abs(v)) {
    comp += (sum - t) + v;
  } else {
    comp += (v - t) + sum;
  }
  sum = t;
}

CompensatedSum::CompensatedSum(const Shape& shape) : shape_(shape), acc_(shape.size()) {}

void CompensatedSum::add(const Element& term) {
  if (term.shape() != shape_) throw DomainError("CompensatedSum: shape mismatch");
  for (std::size_t i = 0; i < acc_.size(); ++i) acc_[i].add(term[i]);
}

void CompensatedSum::add_scaled(const Element& term, double factor) {
  if (term.shape() != shape_) throw DomainError("CompensatedSum: shape mismatch");
  for (std::size_t i = 0; i < acc_.size(); ++i) {
    // The rounding error of the product is exact via fma and is fed back.
    const double p = term[i] * factor;
    acc_[i].add(p);
    acc_[i].add(std::fma(term[i], factor, -p));
  }
}

Element CompensatedSum::value() const {
  std::vector<double> data(acc_.size());
  for (std::size_t i = 0; i < acc_.size(); ++i) data[i] = acc_[i].value();
  return Element::from_data(shape_, std::move(data));
}

std::vector<std::string> generator_rules() { return kRules; }

SequenceGenerator SequenceGenerator::make(std::string rule, GeneratorParams params, Shape shape) {
  if (std::find(kRules.begin(), kRules.end(), rule) == kRules.end()) {
    throw DomainError("unknown generator rule '" + rule + "'");
  }
  if (rule == "tabulated") throw DomainError("tabulated generators are built with SequenceGenerator::tabulated");
  if (shape.dim == 0 || (shape.kind == Kind::scalar && shape.dim != 1)) {
    throw DomainError("generator shape has an invalid dimension");
  }
  SequenceGenerator g;
  g.rule_ = std::move(rule);
  g.params_ = std::move(params);
  g.shape_ = shape;
  const std::string& r = g.rule_;
  if (r == "constant") {
    g.positive_ = param_or(g.params_, "c", 1.0) >= 0.0;
  } else if (r == "power_decay") {
    param(g.params_, r, "p");
    g.positive_ = param_or(g.params_, "scale", 1.0) >= 0.0;
  } else if (r == "geometric") {
    const double q = param(g.params_, r, "q");
    g.positive_ = q >= 0.0 && param_or(g.params_, "scale", 1.0) >= 0.0;
  } else if (r == "inv_n_log_n") {
    g.first_index_ = 2;
  } else if (r == "random_decay") {
    seed_of(g.params_, r);
    param(g.params_, r, "p");
    g.positive_ = param_or(g.params_, "scale", 1.0) >= 0.0;
  } else if (r == "random_decreasing") {
    seed_of(g.params_, r);
  } else if (r == "sparse_random") {
    seed_of(g.params_, r);
    const double density = param(g.params_, r, "density");
    const double bound = param(g.params_, r, "bound");
    const double base = param_or(g.params_, "base", 0.0);
    if (density < 0.0 || density > 1.0) throw DomainError("sparse_random density must lie in [0, 1]");
    if (bound < 0.0 || base < 0.0 || base > bound) throw DomainError("sparse_random needs 0 <= base <= bound");
  }
  return g;
}

SequenceGenerator SequenceGenerator::tabulated(std::vector<double> values) {
  if (values.empty()) throw DomainError("tabulated generator needs at least one value");
  SequenceGenerator g;
  g.rule_ = "tabulated";
  g.shape_ = Shape::scalar();
  g.positive_ = std::all_of(values.begin(), values.end(), [](double v) { return v >= 0.0; });
  g.table_ = std::move(values);
  return g;
}

double SequenceGenerator::scalar_term(std::uint64_t n, std::size_t coord) const {
  const std::string& r = rule_;
  const double dn = static_cast<double>(n);
  const double coord_scale = is_random_rule(r) ? 1.0 : 1.0 / static_cast<double>(coord + 1);
  double v = 0.0;
  if (r == "zero") {
    v = 0.0;
  } else if (r == "constant") {
    v = param_or(params_, "c", 1.0);
  } else if (r == "power_decay") {
    v = param_or(params_, "scale", 1.0) * std::pow(dn, -param(params_, r, "p"));
  } else if (r == "geometric") {
    v = param_or(params_, "scale", 1.0) * std::pow(param(params_, r, "q"), dn);
  } else if (r == "inv_n_log_n") {
    v = n < 2 ? 0.0 : 1.0 / (dn * std::log(dn));
  } else if (r == "inv_n_log_sq") {
    const double l = std::log(dn + 1.0);
    v = 1.0 / (dn * l * l);
  } else if (r == "square_indicator") {
    v = is_perfect_square(n) ? 1.0 : 0.0;
  } else if (r == "random_decay") {
    const double u = 0.5 + 0.5 * hashed_unit(seed_of(params_, r), coord, n, 0);
    v = param_or(params_, "scale", 1.0) * u * std::pow(dn, -param(params_, r, "p"));
  } else if (r == "random_decreasing") {
    // Per-coordinate parameters, fixed over n.
    const std::uint64_t seed = seed_of(params_, r);
    const double a = 0.5 + hashed_unit(seed, coord, 0, 1);
    const double b = hashed_unit(seed, coord, 0, 2);
    const double p = 1.1 + 1.9 * hashed_unit(seed, coord, 0, 3);
    const double q = 0.3 + 0.6 * hashed_unit(seed, coord, 0, 4);
    v = a * std::pow(dn, -p) + b * std::pow(q, dn);
  } else if (r == "sparse_random") {
    const std::uint64_t seed = seed_of(params_, r);
    const double density = param(params_, r, "density");
    const double u = hashed_unit(seed, coord, n, 1);
    const bool member = hashed_unit(seed, coord, n, 0) < density / std::sqrt(dn);
    v = (member ? param(params_, r, "bound") : param_or(params_, "base", 0.0)) * u;
  } else if (r == "tabulated") {
    v = n <= table_.size() ? table_[n - 1] : 0.0;
  }
  return v * coord_scale;
}

Element SequenceGenerator::operator()(std::uint64_t n) const {
  if (n == 0) throw DomainError("sequence terms are indexed from 1");
  const std::size_t m = coordinate_count(shape_);
  std::vector<double> coords(m);
  for (std::size_t j = 0; j < m; ++j) coords[j] = scalar_term(n, j);
  return from_coordinates(shape_, std::move(coords));
}

FiniteSequence SequenceGenerator::take(std::uint64_t n) const {
  if (n == 0) throw DomainError("take: need at least one term");
  std::vector<Element> out;
  out.reserve(n);
  for (std::uint64_t k = 1; k <= n; ++k) out.push_back((*this)(k));
  return FiniteSequence(std::move(out));
}

std::vector<std::uint64_t> checkpoints(std::uint64_t n) {
  if (n == 0) throw DomainError("checkpoints: N must be >= 1");
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 1; p <= n; p *= 2) {
    out.push_back(p);
    if (p > n / 2) break;
  }
  if (out.back() != n) out.push_back(n);
  return out;
}

FiniteSequence partial_sums(const SequenceGenerator& gen, std::uint64_t n) {
  if (n == 0) throw DomainError("partial_sums: N must be >= 1");
  CompensatedSum s(gen.shape());
  std::vector<Element> out;
  out.reserve(n);
  for (std::uint64_t k = 1; k <= n; ++k) {
    s.add(gen(k));
    out.push_back(s.value());
  }
  return FiniteSequence(std::move(out));
}

Element partial_sum_range(const SequenceGenerator& gen, std::uint64_t from, std::uint64_t to) {
  if (from > to) throw DomainError("partial_sum_range: from must not exceed to");
  CompensatedSum s(gen.shape());
  for (std::uint64_t k = from + 1; k <= to; ++k) s.add(gen(k));
  return s.value();
}

OlivierRun olivier_run(const BilinearMap& phi, const SequenceGenerator& xgen, const SequenceGenerator& ygen,
                       std::uint64_t n) {
  if (n == 0) throw DomainError("olivier_run: N must be >= 1");
  const Shape out_shape = phi.output_shape(xgen.shape(), ygen.shape());
  const std::vector<std::uint64_t> cps = checkpoints(n);
  const std::uint64_t first = xgen.first_index();

  OlivierRun run;
  CompensatedSum sy(ygen.shape());
  Element prev_x;
  std::size_t next_cp = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const Element x = xgen(k);
    const Element y = ygen(k);
    require_nonneg(y, k, "y");
    if (k >= first) {
      require_nonneg(x, k, "x");
      if (k > first) require_step_decreasing(prev_x, x, k, "x");
    }
    prev_x = x;
    sy.add(y);
    if (k == cps[next_cp]) {
      run.trajectory.push_back({k, norm(phi(x, sy.value()))});
      run.n_norm_x.push_back({k, static_cast<double>(k) * norm(x)});
      ++next_cp;
    }
  }

  // Tail windows are recomputed directly rather than by differencing prefix
  // sums, so that equality cases are not lost to cancellation.
  for (std::uint64_t c : cps) {
    const std::uint64_t start = std::max<std::uint64_t>((c + 1) / 2, first);
    if (start > c) continue;
    CompensatedSum wy(ygen.shape());
    CompensatedSum wphi(out_shape);
    for (std::uint64_t k = start; k <= c; ++k) {
      const Element y = ygen(k);
      wy.add(y);
      wphi.add(phi(xgen(k), y));
    }
    const Element lhs = phi(xgen(c), wy.value());
    const Element rhs = wphi.value();
    TailDomination t;
    t.n = c;
    t.window_start = start;
    t.lhs = norm(lhs);
    t.rhs = norm(rhs);
    t.slack = std::min(order_floor(lhs), order_floor(rhs - lhs));
    t.holds = t.slack >= -rounding_slack(out_shape, t.rhs);
    run.tail_domination_holds = run.tail_domination_holds && t.holds;
    run.tail_domination.push_back(t);
  }

  run.envelope.resize(run.trajectory.size());
  double sup = 0.0;
  for (std::size_t i = run.trajectory.size(); i-- > 0;) {
    sup = std::max(sup, run.trajectory[i].value);
    run.envelope[i] = {run.trajectory[i].n, sup};
  }
  const double last = run.trajectory.back().value;
  run.heuristic_to_zero = last == 0.0 || (run.trajectory.size() > 1 && last < run.trajectory.front().value);
  return run;
}

CesaroRun cesaro_weighted_mean(const SequenceGenerator& gen, std::uint64_t n, double threshold) {
  if (n == 0) throw DomainError("cesaro_weighted_mean: N must be >= 1");
  const Shape& shape = gen.shape();
  const std::size_t m = shape.size();
  const std::vector<std::uint64_t> cps = checkpoints(n);

  CompensatedSum weighted(shape);  // sum k x_k
  CompensatedSum s(shape);         // S_k
  std::vector<Neumaier> t(m);      // S_1 + ... + S_{k-1}, fed both halves of each S_j

  CesaroRun run;
  std::size_t next_cp = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    if (k > 1) {
      for (std::size_t i = 0; i < m; ++i) {
        t[i].add(s.coordinate(i).sum);
        t[i].add(s.coordinate(i).comp);
      }
    }
    const Element x = gen(k);
    weighted.add_scaled(x, static_cast<double>(k));
    s.add(x);
    if (k != cps[next_cp]) continue;
    ++next_cp;

    const double dk = static_cast<double>(k);
    Element lhs = weighted.value() * (1.0 / dk);
    std::vector<double> rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
      // k S_k - T in extended precision, then divided by k.
      const Neumaier& si = s.coordinate(i);
      const double hi = dk * si.sum;
      Neumaier d;
      d.add(hi);
      d.add(std::fma(dk, si.sum, -hi));
      d.add(dk * si.comp);
      d.add(-t[i].sum);
      d.add(-t[i].comp);
      rhs[i] = d.value() / dk;
    }
    const Element rhs_e = Element::from_data(shape, std::move(rhs));
    const double residual = normalized_residual(lhs, rhs_e, kPureRelative, kTinyFloor);
    run.trajectory.push_back({k, norm(lhs)});
    run.identity_residual.push_back({k, residual});
    run.max_identity_residual = std::max(run.max_identity_residual, residual);
  }
  const double first = run.trajectory.front().value;
  const double last = run.trajectory.back().value;
  run.heuristic_decay = last < threshold && (run.trajectory.size() == 1 || last < first || last == 0.0);
  return run;
}

std::vector<TrajectoryPoint> absolute_cesaro_mean(const SequenceGenerator& gen, std::uint64_t n, std::size_t coord) {
  if (n == 0) throw DomainError("absolute_cesaro_mean: N must be >= 1");
  if (coord >= gen.shape().size()) throw DomainError("absolute_cesaro_mean: coordinate out of range");
  const std::vector<std::uint64_t> cps = checkpoints(n);
  std::vector<TrajectoryPoint> out;
  Neumaier acc;
  std::size_t next_cp = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    acc.add(static_cast<double>(k) * std::abs(gen(k)[coord]));
    if (k == cps[next_cp]) {
      out.push_back({k, acc.value() / static_cast<double>(k)});
      ++next_cp;
    }
  }
  return out;
}

DensityReport set_density(const std::function<bool(std::uint64_t)>& member, std::uint64_t n) {
  if (n == 0) throw DomainError("set_density: N must be >= 1");
  DensityReport report;
  report.checkpoints = checkpoints(n);
  std::uint64_t count = 0;
  std::size_t next_cp = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    if (member(k)) ++count;
    if (k == report.checkpoints[next_cp]) {
      report.counts.push_back(count);
      report.ratios.push_back(static_cast<double>(count) / static_cast<double>(k));
      ++next_cp;
    }
  }
  return report;
}

KvnReport kvn_check(const SequenceGenerator& gen, std::uint64_t n, std::span<const double> eps_grid,
                    std::optional<double> bound, double cesaro_threshold) {
  if (n == 0) throw DomainError("kvn_check: N must be >= 1");
  if (eps_grid.empty()) throw DomainError("kvn_check: epsilon grid is empty");
  for (double e : eps_grid) {
    if (!(e > 0.0)) throw DomainError("kvn_check: every epsilon must be > 0");
  }
  if (bound && !(*bound >= 0.0)) throw DomainError("kvn_check: the bound C must be >= 0");

  const Shape& shape = gen.shape();
  const std::size_t ne = eps_grid.size();
  const Element unit = OrderUnit::canonical(shape).unit();
  const double tol = hypothesis_tol(shape.kind);

  KvnReport report;
  report.converse_checked = bound.has_value();
  report.norm_density.resize(ne);
  report.order_density.resize(ne);
  const std::vector<std::uint64_t> cps = checkpoints(n);
  for (std::size_t e = 0; e < ne; ++e) {
    report.norm_density[e].epsilon = eps_grid[e];
    report.norm_density[e].checkpoints = cps;
    report.order_density[e].epsilon = eps_grid[e];
    report.order_density[e].checkpoints = cps;
  }
  std::vector<std::uint64_t> norm_count(ne, 0);
  std::vector<std::uint64_t> order_count(ne, 0);
  double worst_forward = INFINITY;
  double worst_converse = INFINITY;

  CompensatedSum s(shape);
  std::size_t next_cp = 0;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const Element x = gen(k);
    require_nonneg(x, k, "x");
    if (bound && !less_equal(x, unit * *bound, tol)) {
      std::ostringstream msg;
      msg << "term " << k << " exceeds the bound " << *bound << " u";
      throw PreconditionError(msg.str(), k);
    }
    const double xn = norm(x);
    for (std::size_t e = 0; e < ne; ++e) {
      if (xn >= eps_grid[e]) ++norm_count[e];
      if (less_equal(unit * eps_grid[e], x, tol)) ++order_count[e];
    }
    s.add(x);
    if (k != cps[next_cp]) continue;
    ++next_cp;

    const double dk = static_cast<double>(k);
    const Element sum = s.value();
    const double sum_norm = norm(sum);
    const Element mean = sum * (1.0 / dk);
    report.cesaro.push_back({k, norm(mean)});
    for (std::size_t e = 0; e < ne; ++e) {
      const double eps = eps_grid[e];
      const double ratio_norm = static_cast<double>(norm_count[e]) / dk;
      const double ratio_order = static_cast<double>(order_count[e]) / dk;
      report.norm_density[e].counts.push_back(norm_count[e]);
      report.norm_density[e].ratios.push_back(ratio_norm);
      report.order_density[e].counts.push_back(order_count[e]);
      report.order_density[e].ratios.push_back(ratio_order);

      const double fwd_bound = sum_norm / (eps * dk);
      const double fwd_slack = fwd_bound - ratio_order;
      worst_forward = std::min(worst_forward, fwd_slack);
      if (fwd_slack < -1e-12 * std::max(1.0, fwd_bound)) report.forward_verdict = false;

      if (bound) {
        const double level = *bound * ratio_norm + eps;
        const double conv_slack = order_floor(unit * level - mean);
        worst_converse = std::min(worst_converse, conv_slack);
        if (conv_slack < -rounding_slack(shape, level)) report.converse_verdict = false;
      }
    }
  }
  report.worst_forward_slack = worst_forward;
  report.worst_converse_slack = bound ? worst_converse : 0.0;
  report.heuristic_cesaro_to_zero = report.cesaro.back().value < cesaro_threshold;
  return report;
}

SeriesEquivalence abel_series_equivalence(const BilinearMap& phi, const SequenceGenerator& xgen,
                                          const SequenceGenerator& ygen, std::uint64_t n) {
  if (n == 0) throw DomainError("abel_series_equivalence: N must be >= 1");
  const Shape out_shape = phi.output_shape(xgen.shape(), ygen.shape());
  const std::uint64_t first = xgen.first_index();

  CompensatedSum lhs(out_shape);
  CompensatedSum rhs(out_shape);
  CompensatedSum sy(ygen.shape());
  Element x = xgen(1);
  for (std::uint64_t k = 1; k <= n; ++k) {
    const Element y = ygen(k);
    require_nonneg(y, k, "y");
    if (k >= first) require_nonneg(x, k, "x");
    sy.add(y);
    lhs.add(phi(x, y));
    if (k == n) break;
    const Element next = xgen(k + 1);
    if (k + 1 > first) require_step_decreasing(x, next, k + 1, "x");
    rhs.add(phi(x - next, sy.value()));
    x = next;
  }
  SeriesEquivalence out{lhs.value(), rhs.value(), phi(x, sy.value()), 0.0};
  out.residual = normalized_residual(out.sum_lhs, out.sum_rhs + out.boundary, kPureRelative, kTinyFloor);
  return out;
}

TailSumEquivalence tail_sum_equivalence(const SequenceGenerator& gen, std::uint64_t n, std::uint64_t horizon) {
  if (n == 0) throw DomainError("tail_sum_equivalence: N must be >= 1");
  if (horizon < n + 1) throw DomainError("tail_sum_equivalence: horizon must be >= N + 1");
  const Shape& shape = gen.shape();

  // t_k for k = N+1 down to 1, accumulated from the horizon.
  CompensatedSum tail(shape);
  CompensatedSum tails_total(shape);
  Element boundary = Element::zero(shape);
  for (std::uint64_t k = horizon; k >= 1; --k) {
    const Element x = gen(k);
    require_nonneg(x, k, "x");
    tail.add(x);
    if (k == n + 1) boundary = tail.value() * static_cast<double>(n);
    if (k <= n) tails_total.add(tail.value());
  }
  CompensatedSum weighted(shape);
  for (std::uint64_t k = 1; k <= n; ++k) weighted.add_scaled(gen(k), static_cast<double>(k));

  TailSumEquivalence out{weighted.value(), tails_total.value(), boundary, 0.0};
  out.residual = normalized_residual(out.tail_sum, out.weighted_sum + out.boundary, kPureRelative, kTinyFloor);
  return out;
}

}  // namespace abel
