#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abel/bilinear.hpp"
#include "abel/element.hpp"
#include "abel/functions.hpp"

namespace abel {

/// Entries sorted into nonincreasing order; ties keep their original order.
std::vector<double> decreasing_rearrangement(std::span<const double> x);

struct MajorizationResult {
  /// x is submajorized by y: every prefix sum of x↓ is <= that of y↓.
  bool weak = false;
  /// In addition the totals agree.
  bool strong = false;
  /// prefix_k(y↓) - prefix_k(x↓), k = 1..N.
  std::vector<double> margins;
  /// 1-based k of the first prefix where the weak condition fails.
  std::optional<std::size_t> first_violation;
};

/// Prefix comparisons are made with slack 1e-12 (1 + |prefix of y↓|).
MajorizationResult submajorize_check(std::span<const double> x, std::span<const double> y);

/// Real weights with sum 1 and every prefix sum in [0, 1].
struct SteffensenWeights {
  std::vector<double> w;
  std::vector<double> partials;
};

struct SteffensenVerdict {
  std::optional<SteffensenWeights> weights;
  /// 1-based index m of the violating prefix, n for a bad total.
  std::optional<std::size_t> violating_prefix;
  std::string reason;

  bool valid() const { return weights.has_value(); }
};

/// Checks the Steffensen condition within 1e-12.
SteffensenVerdict steffensen_validate(std::span<const double> w);

/// Validated weights; throws PreconditionError naming the violating prefix.
SteffensenWeights steffensen_weights(std::span<const double> w);

struct JensenResult {
  Element lhs;
  Element rhs;
  /// Smallest coordinate of rhs - lhs.
  double slack = 0.0;
  bool holds = false;
  /// False when the function handle's convexity was not established.
  bool convexity_verified = true;
};

/// f(sum w_k x_k) <= sum w_k f(x_k) for monotone x (either direction) and
/// Steffensen weights; holds when slack >= -1e-10. Throws PreconditionError
/// for non-monotone x or a non-convex handle, DomainError when a point lies
/// outside f's domain.
JensenResult jensen_steffensen_check(const ScalarFunction& f, std::span<const double> xs, const SteffensenWeights& w);

/// f(x) = L x + b + sum_k c_k |x - z_k| on R^N with the coordinatewise
/// modulus and c_k >= 0.
class LatticeConvexFunction {
 public:
  struct Term {
    double coefficient = 0.0;
    std::vector<double> center;
  };

  LatticeConvexFunction(Matrix linear, std::vector<double> offset, std::vector<Term> terms);

  std::size_t dim() const { return offset_.size(); }
  const Matrix& linear() const { return linear_; }
  const std::vector<double>& offset() const { return offset_; }
  const std::vector<Term>& terms() const { return terms_; }

  Element operator()(const Element& x) const;

 private:
  Matrix linear_;
  std::vector<double> offset_;
  std::vector<Term> terms_;
};

/// Vector form of the Jensen-Steffensen inequality in the coordinatewise
/// order, for a monotone chain of vectors.
JensenResult jensen_steffensen_check(const LatticeConvexFunction& f, const FiniteSequence& xs,
                                     const SteffensenWeights& w);

/// Per-part witnesses behind the inequality for |x|.
struct AbsDecomposition {
  double plus_sum = 0.0;   // sum w_k x_k^+
  double minus_sum = 0.0;  // sum w_k x_k^-
  double lhs = 0.0;        // |sum w_k x_k|
  double rhs = 0.0;        // sum w_k |x_k|
  bool parts_nonneg = false;
  bool holds = false;
};

/// Splits |sum w_k x_k| <= sum w_k |x_k| into two positive-sum instances,
/// one for the positive parts and one for the negative parts of x.
AbsDecomposition js_abs_decomposition(std::span<const double> xs, const SteffensenWeights& w);

enum class PositiveSumCondition { decreasing_prefix, increasing_suffix };

struct PositiveSumResult {
  Element value;
  double slack = 0.0;
  bool holds = false;
};

/// sum Phi(x_k, y_k) >= 0 under either
///   decreasing_prefix: x_1 >= ... >= x_n >= 0 and every prefix sum of y >= 0, or
///   increasing_suffix: 0 <= x_1 <= ... <= x_n and every suffix sum of y >= 0.
/// Holds within -1e-12 (1 + ||sum||). Hypotheses are checked in the order of
/// each kind (1e-12 slack on the y sums); failures raise PreconditionError.
PositiveSumResult positive_sum_check(const BilinearMap& phi, const FiniteSequence& xs, const FiniteSequence& ys,
                                     PositiveSumCondition condition);

/// Convex piecewise-linear function on [a, b]: slope s_j between breakpoints
/// x_j and x_{j+1} (x_0 = a, x_{n+1} = b), value f(a) at the left end.
class PwlConvexFunction {
 public:
  PwlConvexFunction(double a, double b, std::vector<double> breakpoints, std::vector<double> slopes,
                    double anchor_value);

  double a() const { return a_; }
  double b() const { return b_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& slopes() const { return slopes_; }
  double anchor_value() const { return anchor_; }

  /// Throws DomainError outside [a, b].
  double operator()(double x) const;

 private:
  double a_;
  double b_;
  std::vector<double> breakpoints_;
  std::vector<double> slopes_;
  double anchor_;
  std::vector<double> knot_values_;  // f at each breakpoint
};

struct HlpDecomposition {
  struct Term {
    double center = 0.0;
    double coefficient = 0.0;
  };
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<Term> terms;
};

/// f(x) = alpha x + beta + sum c_k |x - x_k| with c_k = (s_k - s_{k-1}) / 2,
/// alpha = (s_0 + s_n) / 2 and beta matched at the left endpoint.
HlpDecomposition hlp_decompose(const PwlConvexFunction& f);

double hlp_evaluate(const HlpDecomposition& d, double x);

/// Handle for the registry-style checks: convex, with the monotonicity
/// interval read off the cumulative slopes. Throws DomainError if a
/// coefficient is negative.
ScalarFunction hlp_function(const HlpDecomposition& d, Interval domain = Interval::real_line());

/// sup over an evenly spaced grid of `points` points on [a, b] of
/// |f(x) - hlp_evaluate(d, x)|, and max |f| on that grid.
struct ReconstructionError {
  double sup_error = 0.0;
  double max_abs_f = 0.0;
};
ReconstructionError hlp_reconstruction_error(const PwlConvexFunction& f, const HlpDecomposition& d,
                                             std::size_t points = 1000);

enum class TomicWeylSide { left, right };

struct TomicWeylResult {
  Element sum_u;
  Element sum_v;
  double slack = 0.0;
  bool holds = false;
};

/// left:  sum Phi(x_k, u_k) <= sum Phi(x_k, v_k)
/// right: sum Phi(u_k, x_k) <= sum Phi(v_k, x_k)
/// for x_1 >= ... >= x_n >= 0, u_1 >= ... >= u_n >= 0 and
/// sum_{k<=j} u_k <= sum_{k<=j} v_k for every j. Holds within -1e-10.
/// Hypothesis failures raise PreconditionError with the 1-based index.
TomicWeylResult tomic_weyl_check(const BilinearMap& phi, const FiniteSequence& xs, const FiniteSequence& us,
                                 const FiniteSequence& vs, TomicWeylSide side);

struct SumInequality {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = false;
};

/// sum f(x_i) <= sum f(y_i) for x submajorized by y and f convex and
/// nondecreasing on an interval containing every entry; under strong
/// majorization f only needs to be convex. Holds within 1e-10 (1 + |rhs|).
SumInequality tomic_weyl_vector_check(const ScalarFunction& f, std::span<const double> x, std::span<const double> y);

}  // namespace abel
