#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abel/bilinear.hpp"
#include "abel/element.hpp"

namespace abel {

using GeneratorParams = std::map<std::string, double>;

/// A closed-form family x_1, x_2, ... of elements.
///
/// Rules (parameters in braces, defaults after '='):
///   zero
///   constant{c=1}
///   power_decay{p, scale=1}            scale * n^-p
///   geometric{q, scale=1}              scale * q^n
///   inv_n_log_n                        1 / (n log n) for n >= 2, x_1 = 0
///   inv_n_log_sq                       1 / (n log(n+1)^2)
///   square_indicator                   1 if n is a perfect square, else 0
///   random_decay{seed, p, scale=1}     scale * u_n * n^-p, u_n in [0.5, 1)
///   random_decreasing{seed}            a n^-p + b q^n with seeded a, b, p, q
///   sparse_random{seed, density, bound, base=0}
///                                      bound * u_n on a seeded sparse set of
///                                      indices (probability density/sqrt(n)),
///                                      base * u_n elsewhere
///   tabulated{values}                  explicit values, see `tabulated()`
///
/// Vector shapes give coordinate j the scalar rule times 1/(j+1) for the
/// deterministic rules and an independently seeded stream for the random
/// rules; matrix shapes use the diagonal matrix of the vector coordinates.
class SequenceGenerator {
 public:
  static SequenceGenerator make(std::string rule, GeneratorParams params = {}, Shape shape = Shape::scalar());
  static SequenceGenerator tabulated(std::vector<double> values);

  /// Term x_n for n >= 1.
  Element operator()(std::uint64_t n) const;

  const std::string& rule() const { return rule_; }
  const GeneratorParams& params() const { return params_; }
  const Shape& shape() const { return shape_; }
  const std::vector<double>& table() const { return table_; }

  /// First index the family is defined at; earlier terms are 0 by convention.
  std::uint64_t first_index() const { return first_index_; }
  /// The rule only produces nonnegative terms.
  bool positive() const { return positive_; }

  /// Terms x_1..x_n.
  FiniteSequence take(std::uint64_t n) const;

 private:
  SequenceGenerator() = default;
  double scalar_term(std::uint64_t n, std::size_t coord) const;

  std::string rule_;
  GeneratorParams params_;
  Shape shape_;
  std::vector<double> table_;
  std::uint64_t first_index_ = 1;
  bool positive_ = true;
};

std::vector<std::string> generator_rules();

/// Neumaier's variant of Kahan summation. `sum + comp` carries roughly twice
/// the working precision.
struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v);
  double value() const { return sum + comp; }
};

/// Compensated running sum over elements of one shape, one accumulator per
/// stored coordinate.
class CompensatedSum {
 public:
  explicit CompensatedSum(const Shape& shape);

  void add(const Element& term);
  void add_scaled(const Element& term, double factor);
  Element value() const;

  const Shape& shape() const { return shape_; }
  const Neumaier& coordinate(std::size_t i) const { return acc_[i]; }

 private:
  Shape shape_;
  std::vector<Neumaier> acc_;
};

/// Powers of two up to N, followed by N itself when N is not a power of two.
std::vector<std::uint64_t> checkpoints(std::uint64_t n);

/// S_1..S_N with compensated accumulation.
FiniteSequence partial_sums(const SequenceGenerator& gen, std::uint64_t n);

/// sum_{k=from+1}^{to} x_k, compensated; that is S(to) - S(from).
Element partial_sum_range(const SequenceGenerator& gen, std::uint64_t from, std::uint64_t to);

struct TrajectoryPoint {
  std::uint64_t n = 0;
  double value = 0.0;
};

struct TailDomination {
  std::uint64_t n = 0;
  std::uint64_t window_start = 0;
  /// ||Phi(x_n, sum_{k=start}^n y_k)|| and ||sum_{k=start}^n Phi(x_k, y_k)||.
  double lhs = 0.0;
  double rhs = 0.0;
  /// min over the output order of rhs_elem - lhs_elem and of lhs_elem.
  double slack = 0.0;
  bool holds = false;
};

struct OlivierRun {
  /// ||Phi(x_n, sum_{k<=n} y_k)|| at each checkpoint.
  std::vector<TrajectoryPoint> trajectory;
  /// n ||x_n|| at each checkpoint.
  std::vector<TrajectoryPoint> n_norm_x;
  /// sup of the trajectory over checkpoints >= n (nonincreasing in n).
  std::vector<TrajectoryPoint> envelope;
  /// 0 <= Phi(x_n, sum_{k=s}^n y_k) <= sum_{k=s}^n Phi(x_k, y_k) with s = ceil(n/2).
  std::vector<TailDomination> tail_domination;
  bool tail_domination_holds = true;
  /// Heuristic only: the envelope decreased from the first to the last
  /// checkpoint. No finite run certifies a limit.
  bool heuristic_to_zero = false;
};

/// Tracks Phi(x_n, sum_{k<=n} y_k) for a decreasing positive x and positive y.
/// Prefix hypotheses are checked from xgen.first_index(); violations raise
/// PreconditionError.
OlivierRun olivier_run(const BilinearMap& phi, const SequenceGenerator& xgen, const SequenceGenerator& ygen,
                       std::uint64_t n);

struct CesaroRun {
  /// ||(1/n) sum_{k<=n} k x_k|| at each checkpoint.
  std::vector<TrajectoryPoint> trajectory;
  /// Normalized residual of (1/n) sum k x_k = S_n - (S_1 + ... + S_{n-1})/n at each checkpoint.
  std::vector<TrajectoryPoint> identity_residual;
  double max_identity_residual = 0.0;
  /// Heuristic only: final < first and final < threshold.
  bool heuristic_decay = false;
};

CesaroRun cesaro_weighted_mean(const SequenceGenerator& gen, std::uint64_t n, double threshold);

/// (1/n) sum_{k<=n} k |x_k[coord]| for a coordinate functional; exposed for
/// inspection, no claims attached.
std::vector<TrajectoryPoint> absolute_cesaro_mean(const SequenceGenerator& gen, std::uint64_t n, std::size_t coord);

struct DensityReport {
  double epsilon = 0.0;
  std::vector<std::uint64_t> checkpoints;
  std::vector<std::uint64_t> counts;
  std::vector<double> ratios;
};

/// |A ∩ {1..n}| / n at the checkpoints, from exact integer counters.
DensityReport set_density(const std::function<bool(std::uint64_t)>& member, std::uint64_t n);

struct KvnReport {
  /// ||(1/n) sum_{k<=n} x_k|| at each checkpoint.
  std::vector<TrajectoryPoint> cesaro;
  /// Densities of A(eps) = {n : ||x_n|| >= eps}, one report per epsilon.
  std::vector<DensityReport> norm_density;
  /// Densities of {n : x_n >= eps u}, one report per epsilon. Coincides with
  /// norm_density for scalars.
  std::vector<DensityReport> order_density;
  /// ratio_order <= ||sum_{k<=n} x_k|| / (eps n) at every checkpoint and eps.
  bool forward_verdict = true;
  /// (1/n) sum x_k <= C ratio_norm u + eps u at every checkpoint and eps.
  /// Not evaluated (left true) without a bound.
  bool converse_verdict = true;
  bool converse_checked = false;
  double worst_forward_slack = 0.0;
  double worst_converse_slack = 0.0;
  /// Heuristic only: the final Cesàro mean is below the caller's threshold.
  bool heuristic_cesaro_to_zero = false;
};

/// Checkpoint inequalities relating Cesàro means of a positive sequence and
/// the densities of its exceptional sets. With `bound`, x_n <= bound * u is
/// checked on the prefix (PreconditionError otherwise) and the converse
/// envelope is evaluated.
KvnReport kvn_check(const SequenceGenerator& gen, std::uint64_t n, std::span<const double> eps_grid,
                    std::optional<double> bound, double cesaro_threshold);

struct SeriesEquivalence {
  /// sum_{n<=N} Phi(x_n, y_n)
  Element sum_lhs;
  /// sum_{n<N} Phi(x_n - x_{n+1}, sum_{k<=n} y_k)
  Element sum_rhs;
  /// Phi(x_N, sum_{k<=N} y_k)
  Element boundary;
  /// Normalized residual of sum_lhs against sum_rhs + boundary.
  double residual = 0.0;
};

SeriesEquivalence abel_series_equivalence(const BilinearMap& phi, const SequenceGenerator& xgen,
                                          const SequenceGenerator& ygen, std::uint64_t n);

struct TailSumEquivalence {
  /// sum_{n<=N} n x_n
  Element weighted_sum;
  /// sum_{n<=N} t_n with t_n = sum_{k=n}^{H} x_k
  Element tail_sum;
  /// N t_{N+1}
  Element boundary;
  double residual = 0.0;
};

/// The series of tails against sum n x_n for a positive series, with tails
/// truncated at `horizon` >= N + 1.
TailSumEquivalence tail_sum_equivalence(const SequenceGenerator& gen, std::uint64_t n, std::uint64_t horizon);

}  // namespace abel
