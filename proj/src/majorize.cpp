#include "abel/majorize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "abel/error.hpp"
#include "abel/ordered.hpp"
#include "abel/seriesdiag.hpp"

namespace abel {

namespace {

constexpr double kWeightTol = 1e-12;

double compensated_sum(std::span<const double> v) {
  Neumaier acc;
  for (double x : v) acc.add(x);
  return acc.value();
}

double compensated_dot(std::span<const double> a, std::span<const double> b) {
  Neumaier acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double p = a[i] * b[i];
    acc.add(p);
    acc.add(std::fma(a[i], b[i], -p));
  }
  return acc.value();
}

// Monotone in either direction, checked exactly.
bool monotone_scalars(std::span<const double> xs) {
  bool inc = true;
  bool dec = true;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    inc = inc && xs[k] <= xs[k + 1];
    dec = dec && xs[k] >= xs[k + 1];
  }
  return inc || dec;
}

std::size_t first_non_monotone(std::span<const double> xs) {
  // Direction is fixed by the first strict step.
  int dir = 0;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const int step = xs[k] < xs[k + 1] ? 1 : (xs[k] > xs[k + 1] ? -1 : 0);
    if (step == 0) continue;
    if (dir == 0) dir = step;
    if (step != dir) return k + 1;
  }
  return 0;
}

void require_same_length(std::size_t a, std::size_t b, std::string_view op) {
  if (a != b) {
    std::ostringstream msg;
    msg << op << ": lengths differ (" << a << " vs " << b << ")";
    throw DomainError(msg.str());
  }
}

void require_chain(const FiniteSequence& xs, Direction dir, bool nonneg, std::string_view what) {
  const ChainVerdict v = is_monotone_chain(xs, dir, nonneg, hypothesis_tol(xs.shape().kind));
  if (!v.ok()) {
    throw PreconditionError(std::string(what) + " hypothesis fails: " + v.reason, v.violation.value_or(0));
  }
}

}  // namespace

std::vector<double> decreasing_rearrangement(std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  std::stable_sort(out.begin(), out.end(), [](double a, double b) { return a > b; });
  return out;
}

MajorizationResult submajorize_check(std::span<const double> x, std::span<const double> y) {
  require_same_length(x.size(), y.size(), "submajorize_check");
  const std::vector<double> xd = decreasing_rearrangement(x);
  const std::vector<double> yd = decreasing_rearrangement(y);
  MajorizationResult r;
  r.weak = true;
  Neumaier px;
  Neumaier py;
  for (std::size_t k = 0; k < xd.size(); ++k) {
    px.add(xd[k]);
    py.add(yd[k]);
    const double margin = py.value() - px.value();
    r.margins.push_back(margin);
    if (margin < -kWeightTol * (1.0 + std::abs(py.value())) && !r.first_violation) {
      r.weak = false;
      r.first_violation = k + 1;
    }
  }
  const double total_gap = r.margins.empty() ? 0.0 : r.margins.back();
  r.strong = r.weak && std::abs(total_gap) <= kWeightTol * (1.0 + std::abs(py.value()));
  return r;
}

SteffensenVerdict steffensen_validate(std::span<const double> w) {
  SteffensenVerdict v;
  if (w.empty()) {
    v.reason = "no weights";
    return v;
  }
  SteffensenWeights sw;
  sw.w.assign(w.begin(), w.end());
  Neumaier acc;
  for (std::size_t m = 0; m < w.size(); ++m) {
    acc.add(w[m]);
    const double p = acc.value();
    sw.partials.push_back(p);
    if (p < -kWeightTol || p > 1.0 + kWeightTol) {
      std::ostringstream msg;
      msg << "prefix sum " << m + 1 << " is " << p << ", outside [0, 1]";
      v.violating_prefix = m + 1;
      v.reason = msg.str();
      return v;
    }
  }
  if (std::abs(sw.partials.back() - 1.0) > kWeightTol) {
    std::ostringstream msg;
    msg << "weights sum to " << sw.partials.back() << ", not 1";
    v.violating_prefix = w.size();
    v.reason = msg.str();
    return v;
  }
  v.weights = std::move(sw);
  return v;
}

SteffensenWeights steffensen_weights(std::span<const double> w) {
  SteffensenVerdict v = steffensen_validate(w);
  if (!v.valid()) throw PreconditionError("invalid Steffensen weights: " + v.reason, v.violating_prefix.value_or(0));
  return std::move(*v.weights);
}

JensenResult jensen_steffensen_check(const ScalarFunction& f, std::span<const double> xs,
                                     const SteffensenWeights& w) {
  require_same_length(xs.size(), w.w.size(), "jensen_steffensen_check");
  if (xs.empty()) throw DomainError("jensen_steffensen_check: no points");
  if (!f.convex()) throw PreconditionError("function '" + f.name() + "' is not known to be convex", 0);
  if (!monotone_scalars(xs)) {
    const std::size_t k = first_non_monotone(xs);
    std::ostringstream msg;
    msg << "points are not monotone (direction changes at index " << k << ")";
    throw PreconditionError(msg.str(), k);
  }
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (!f.domain().contains(xs[k])) {
      std::ostringstream msg;
      msg << "point x_" << k + 1 << " = " << xs[k] << " is outside the domain of " << f.name();
      throw DomainError(msg.str());
    }
  }
  const double mean = compensated_dot(w.w, xs);
  std::vector<double> fx(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) fx[k] = f(xs[k]);

  JensenResult r;
  r.lhs = Element::scalar(f(mean));
  r.rhs = Element::scalar(compensated_dot(w.w, fx));
  r.slack = r.rhs.value() - r.lhs.value();
  r.holds = r.slack >= -1e-10;
  r.convexity_verified = f.verified();
  return r;
}

LatticeConvexFunction::LatticeConvexFunction(Matrix linear, std::vector<double> offset, std::vector<Term> terms)
    : linear_(std::move(linear)), offset_(std::move(offset)), terms_(std::move(terms)) {
  const auto n = static_cast<Eigen::Index>(offset_.size());
  if (n == 0) throw DomainError("lattice convex function needs a positive dimension");
  if (linear_.rows() != n || linear_.cols() != n) throw DomainError("linear part must be N x N");
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (terms_[k].center.size() != offset_.size()) throw DomainError("term center has the wrong dimension");
    if (!(terms_[k].coefficient >= 0.0)) {
      std::ostringstream msg;
      msg << "coefficient " << k + 1 << " is negative";
      throw DomainError(msg.str());
    }
  }
}

Element LatticeConvexFunction::operator()(const Element& x) const {
  if (x.kind() != Kind::vector || x.dim() != dim()) throw DomainError("argument must be a vector of dimension N");
  const std::size_t n = dim();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Neumaier acc;
    acc.add(offset_[i]);
    for (std::size_t j = 0; j < n; ++j) acc.add(linear_(Eigen::Index(i), Eigen::Index(j)) * x[j]);
    for (const Term& t : terms_) acc.add(t.coefficient * std::abs(x[i] - t.center[i]));
    out[i] = acc.value();
  }
  return Element::vector(std::move(out));
}

JensenResult jensen_steffensen_check(const LatticeConvexFunction& f, const FiniteSequence& xs,
                                     const SteffensenWeights& w) {
  require_same_length(xs.size(), w.w.size(), "jensen_steffensen_check");
  if (xs.shape() != Shape::vector(f.dim())) throw DomainError("points must be vectors of the function's dimension");
  const ChainVerdict dec = is_monotone_chain(xs, Direction::decreasing, false);
  if (!dec.ok()) {
    const ChainVerdict inc = is_monotone_chain(xs, Direction::increasing, false);
    if (!inc.ok()) {
      const std::size_t k = std::max(dec.violation.value_or(0), inc.violation.value_or(0));
      throw PreconditionError("points are not a monotone chain: " + inc.reason, k);
    }
  }
  const Shape& shape = xs.shape();
  CompensatedSum mean(shape);
  CompensatedSum rhs(shape);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mean.add_scaled(xs[k], w.w[k]);
    rhs.add_scaled(f(xs[k]), w.w[k]);
  }
  JensenResult r;
  r.lhs = f(mean.value());
  r.rhs = rhs.value();
  r.slack = order_floor(r.rhs - r.lhs);
  r.holds = r.slack >= -1e-10;
  return r;
}

AbsDecomposition js_abs_decomposition(std::span<const double> xs, const SteffensenWeights& w) {
  require_same_length(xs.size(), w.w.size(), "js_abs_decomposition");
  if (!monotone_scalars(xs)) {
    const std::size_t k = first_non_monotone(xs);
    throw PreconditionError("points are not monotone", k);
  }
  const bool increasing = xs.front() <= xs.back();
  std::vector<double> plus(xs.size());
  std::vector<double> minus(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    plus[k] = std::max(xs[k], 0.0);
    minus[k] = std::max(-xs[k], 0.0);
  }
  // For increasing x the positive parts increase and the negative parts
  // decrease; the weights have nonnegative prefix and suffix sums.
  const BilinearMap phi(BilinearVariant::scalar_multiply);
  const FiniteSequence ws = FiniteSequence::scalars(w.w);
  const auto cond_plus = increasing ? PositiveSumCondition::increasing_suffix : PositiveSumCondition::decreasing_prefix;
  const auto cond_minus = increasing ? PositiveSumCondition::decreasing_prefix : PositiveSumCondition::increasing_suffix;
  const PositiveSumResult p = positive_sum_check(phi, FiniteSequence::scalars(plus), ws, cond_plus);
  const PositiveSumResult m = positive_sum_check(phi, FiniteSequence::scalars(minus), ws, cond_minus);

  AbsDecomposition d;
  d.plus_sum = p.value.value();
  d.minus_sum = m.value.value();
  d.parts_nonneg = p.holds && m.holds;
  d.lhs = std::abs(compensated_dot(w.w, xs));
  std::vector<double> absx(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) absx[k] = std::abs(xs[k]);
  d.rhs = compensated_dot(w.w, absx);
  d.holds = d.parts_nonneg && d.lhs <= d.rhs + 1e-12 * (1.0 + d.rhs);
  return d;
}

PositiveSumResult positive_sum_check(const BilinearMap& phi, const FiniteSequence& xs, const FiniteSequence& ys,
                                     PositiveSumCondition condition) {
  require_same_length(xs.size(), ys.size(), "positive_sum_check");
  const Shape out_shape = phi.output_shape(xs.shape(), ys.shape());
  const Shape& yshape = ys.shape();
  const double ytol = std::max(hypothesis_tol(yshape.kind), kWeightTol);
  const Element yzero = Element::zero(yshape);
  const std::size_t n = xs.size();

  if (condition == PositiveSumCondition::decreasing_prefix) {
    require_chain(xs, Direction::decreasing, true, "x");
    CompensatedSum acc(yshape);
    for (std::size_t j = 0; j < n; ++j) {
      acc.add(ys[j]);
      if (!less_equal(yzero, acc.value(), ytol)) {
        std::ostringstream msg;
        msg << "prefix sum of y through index " << j + 1 << " is not >= 0";
        throw PreconditionError(msg.str(), j + 1);
      }
    }
  } else {
    require_chain(xs, Direction::increasing, true, "x");
    CompensatedSum acc(yshape);
    for (std::size_t j = n; j-- > 0;) {
      acc.add(ys[j]);
      if (!less_equal(yzero, acc.value(), ytol)) {
        std::ostringstream msg;
        msg << "suffix sum of y from index " << j + 1 << " is not >= 0";
        throw PreconditionError(msg.str(), j + 1);
      }
    }
  }
  CompensatedSum total(out_shape);
  for (std::size_t k = 0; k < n; ++k) total.add(phi(xs[k], ys[k]));
  PositiveSumResult r;
  r.value = total.value();
  r.slack = order_floor(r.value);
  r.holds = r.slack >= -1e-12 * (1.0 + norm(r.value));
  return r;
}

PwlConvexFunction::PwlConvexFunction(double a, double b, std::vector<double> breakpoints, std::vector<double> slopes,
                                     double anchor_value)
    : a_(a), b_(b), breakpoints_(std::move(breakpoints)), slopes_(std::move(slopes)), anchor_(anchor_value) {
  if (!(a_ < b_)) throw DomainError("piecewise-linear function needs a < b");
  if (slopes_.size() != breakpoints_.size() + 1) throw DomainError("need exactly one more slope than breakpoints");
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    const double x = breakpoints_[k];
    if (!(x > a_ && x < b_)) {
      std::ostringstream msg;
      msg << "breakpoint " << k + 1 << " = " << x << " is not inside (a, b)";
      throw DomainError(msg.str());
    }
    if (k > 0 && !(breakpoints_[k - 1] < x)) throw DomainError("breakpoints must be strictly increasing");
  }
  for (std::size_t k = 1; k < slopes_.size(); ++k) {
    if (!(slopes_[k - 1] < slopes_[k])) {
      std::ostringstream msg;
      msg << "slopes are not strictly increasing at breakpoint " << k << " (convexity fails)";
      throw DomainError(msg.str());
    }
  }
  knot_values_.resize(breakpoints_.size());
  double left = a_;
  double value = anchor_;
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    value += slopes_[k] * (breakpoints_[k] - left);
    knot_values_[k] = value;
    left = breakpoints_[k];
  }
}

double PwlConvexFunction::operator()(double x) const {
  if (!(x >= a_ && x <= b_)) {
    std::ostringstream msg;
    msg << "x = " << x << " is outside [" << a_ << ", " << b_ << "]";
    throw DomainError(msg.str());
  }
  // Segment j is [x_j, x_{j+1}] with x_0 = a.
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  const auto j = static_cast<std::size_t>(it - breakpoints_.begin());
  if (j == 0) return anchor_ + slopes_[0] * (x - a_);
  return knot_values_[j - 1] + slopes_[j] * (x - breakpoints_[j - 1]);
}

HlpDecomposition hlp_decompose(const PwlConvexFunction& f) {
  const std::vector<double>& s = f.slopes();
  const std::vector<double>& xk = f.breakpoints();
  HlpDecomposition d;
  d.alpha = 0.5 * (s.front() + s.back());
  for (std::size_t k = 0; k < xk.size(); ++k) d.terms.push_back({xk[k], 0.5 * (s[k + 1] - s[k])});
  Neumaier beta;
  beta.add(f.anchor_value());
  beta.add(-d.alpha * f.a());
  for (const auto& t : d.terms) beta.add(-t.coefficient * std::abs(f.a() - t.center));
  d.beta = beta.value();
  return d;
}

double hlp_evaluate(const HlpDecomposition& d, double x) {
  Neumaier acc;
  acc.add(d.alpha * x);
  acc.add(d.beta);
  for (const auto& t : d.terms) acc.add(t.coefficient * std::abs(x - t.center));
  return acc.value();
}

ScalarFunction hlp_function(const HlpDecomposition& d, Interval domain) {
  for (std::size_t k = 0; k < d.terms.size(); ++k) {
    if (!(d.terms[k].coefficient >= 0.0)) {
      std::ostringstream msg;
      msg << "HLP coefficient " << k + 1 << " is negative";
      throw DomainError(msg.str());
    }
  }
  std::vector<HlpDecomposition::Term> sorted = d.terms;
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& l, const auto& r) { return l.center < r.center; });

  // Slope left of every center is alpha - sum c_k; each center adds 2 c_k.
  double slope = d.alpha;
  for (const auto& t : sorted) slope -= t.coefficient;
  ScalarFunction::Traits traits;
  traits.domain = domain;
  traits.convex = true;
  traits.affine = std::all_of(sorted.begin(), sorted.end(), [](const auto& t) { return t.coefficient == 0.0; });
  if (slope >= 0.0) {
    traits.nondecreasing_on = domain;
  } else {
    for (const auto& t : sorted) {
      slope += 2.0 * t.coefficient;
      if (slope >= 0.0) {
        traits.nondecreasing_on = {std::max(t.center, domain.lo), domain.hi};
        break;
      }
    }
  }
  FunctionParams params{{"alpha", d.alpha}, {"beta", d.beta}, {"terms", static_cast<double>(d.terms.size())}};
  return ScalarFunction("hlp", std::move(params), [d](double x) { return hlp_evaluate(d, x); }, {}, traits);
}

ReconstructionError hlp_reconstruction_error(const PwlConvexFunction& f, const HlpDecomposition& d,
                                             std::size_t points) {
  if (points < 2) throw DomainError("reconstruction grid needs at least two points");
  ReconstructionError e;
  const double step = (f.b() - f.a()) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double x = i + 1 == points ? f.b() : f.a() + step * static_cast<double>(i);
    const double fx = f(x);
    e.max_abs_f = std::max(e.max_abs_f, std::abs(fx));
    e.sup_error = std::max(e.sup_error, std::abs(fx - hlp_evaluate(d, x)));
  }
  return e;
}

TomicWeylResult tomic_weyl_check(const BilinearMap& phi, const FiniteSequence& xs, const FiniteSequence& us,
                                 const FiniteSequence& vs, TomicWeylSide side) {
  require_same_length(xs.size(), us.size(), "tomic_weyl_check");
  require_same_length(xs.size(), vs.size(), "tomic_weyl_check");
  if (us.shape() != vs.shape()) throw DomainError("tomic_weyl_check: u and v must share a shape");
  const Shape out_shape =
      side == TomicWeylSide::left ? phi.output_shape(xs.shape(), us.shape()) : phi.output_shape(us.shape(), xs.shape());

  require_chain(xs, Direction::decreasing, true, "x");
  require_chain(us, Direction::decreasing, true, "u");
  const double tol = hypothesis_tol(us.shape().kind);
  const FiniteSequence pu = us.prefix_sums();
  const FiniteSequence pv = vs.prefix_sums();
  for (std::size_t j = 0; j < pu.size(); ++j) {
    if (!less_equal(pu[j], pv[j], tol)) {
      std::ostringstream msg;
      msg << "prefix sum of u through index " << j + 1 << " is not <= that of v";
      throw PreconditionError(msg.str(), j + 1);
    }
  }
  CompensatedSum su(out_shape);
  CompensatedSum sv(out_shape);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (side == TomicWeylSide::left) {
      su.add(phi(xs[k], us[k]));
      sv.add(phi(xs[k], vs[k]));
    } else {
      su.add(phi(us[k], xs[k]));
      sv.add(phi(vs[k], xs[k]));
    }
  }
  TomicWeylResult r{su.value(), sv.value(), 0.0, false};
  r.slack = order_floor(r.sum_v - r.sum_u);
  r.holds = r.slack >= -1e-10 * std::max(1.0, norm(r.sum_v));
  return r;
}

SumInequality tomic_weyl_vector_check(const ScalarFunction& f, std::span<const double> x, std::span<const double> y) {
  require_same_length(x.size(), y.size(), "tomic_weyl_vector_check");
  if (!f.convex()) throw PreconditionError("function '" + f.name() + "' is not known to be convex", 0);
  const MajorizationResult m = submajorize_check(x, y);
  if (!m.weak) {
    throw PreconditionError("x is not submajorized by y (prefix " + std::to_string(*m.first_violation) + ")",
                            *m.first_violation);
  }
  const Interval& mono = m.strong ? f.domain() : f.traits().nondecreasing_on;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (double v : {x[i], y[i]}) {
      if (!mono.contains(v) || !f.domain().contains(v)) {
        std::ostringstream msg;
        msg << "entry " << v << " at index " << i + 1 << " is outside the interval where " << f.name()
            << (m.strong ? " is defined" : " is nondecreasing");
        throw PreconditionError(msg.str(), i + 1);
      }
    }
  }
  std::vector<double> fx(x.size());
  std::vector<double> fy(y.size());
  std::transform(x.begin(), x.end(), fx.begin(), [&](double v) { return f(v); });
  std::transform(y.begin(), y.end(), fy.begin(), [&](double v) { return f(v); });
  SumInequality r;
  r.lhs = compensated_sum(fx);
  r.rhs = compensated_sum(fy);
  r.slack = r.rhs - r.lhs;
  r.holds = r.slack >= -1e-10 * (1.0 + std::abs(r.rhs));
  return r;
}

}  // namespace abel
