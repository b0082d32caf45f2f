#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "abel/bilinear.hpp"
#include "abel/element.hpp"

namespace abel {

/// Default reconciliation tolerances for the summation-by-parts identities.
inline constexpr double kIdentityRelTol = 1e-9;
inline constexpr double kIdentityAbsTol = 1e-12;

/// sum_{k=1}^n Phi(x_k, y_k), accumulated left to right.
Element direct_sum(const BilinearMap& phi, const FiniteSequence& xs, const FiniteSequence& ys);

/// Which rewriting of sum Phi(x_k, y_k) to evaluate.
///   forward        sum_{k<n} Phi(x_k - x_{k+1}, sum_{j<=k} y_j) + Phi(x_n, sum_j y_j)
///   dual_forward   sum_{k<n} Phi(sum_{j<=k} x_j, y_k - y_{k+1}) + Phi(sum_j x_j, y_n)
///   backward       sum_{k>=2} Phi(x_k - x_{k-1}, sum_{j>=k} y_j) + Phi(x_1, sum_j y_j)
///   dual_backward  sum_{k>=2} Phi(sum_{j>=k} x_j, y_k - y_{k-1}) + Phi(sum_j x_j, y_1)
/// With scalar_multiply, forward and backward are the classical upward and
/// downward Abel transformations.
enum class AbelVariant { forward, dual_forward, backward, dual_backward };

inline constexpr std::array<AbelVariant, 4> kAllAbelVariants = {
    AbelVariant::forward, AbelVariant::dual_forward, AbelVariant::backward, AbelVariant::dual_backward};

std::string_view to_string(AbelVariant v);
AbelVariant parse_abel_variant(std::string_view name);

/// Value of a rewritten sum together with its summands, in evaluation order
/// (the boundary term last). For abel_mixed the summands are the four groups.
struct TransformResult {
  Element value;
  std::vector<Element> summands;
};

TransformResult abel_transform(const BilinearMap& phi, const FiniteSequence& xs, const FiniteSequence& ys,
                               AbelVariant variant);

/// The two-sided form split at the 1-based index k:
///   sum_{j<k} Phi(x_j - x_{j+1}, sum_{i<=j} y_i) + Phi(x_k, sum_{i<=k} y_i)
///   + Phi(x_{k+1}, sum_{i>k} y_i) + sum_{j>=k+2} Phi(x_j - x_{j-1}, sum_{i>=j} y_i).
/// Empty groups (k = n - 1, n) contribute the zero element.
TransformResult abel_mixed(const BilinearMap& phi, const FiniteSequence& xs, const FiniteSequence& ys, std::size_t k);

struct AbelBound {
  double lhs = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// |sum a_k b_k| <= a_1 max_m |sum_{k<=m} b_k| for a_1 >= ... >= a_n >= 0.
/// The ordering of `a` is checked exactly; violations raise PreconditionError.
AbelBound abel_inequality_bound(std::span<const double> a, std::span<const double> b);

struct SandwichResult {
  Element lower;
  Element value;
  Element upper;
  bool holds = false;
  /// min(value - lower, upper - value) in the output order (smallest
  /// coordinate or eigenvalue); >= -1e-10 when the sandwich holds.
  double worst_slack = 0.0;
};

/// Phi(m, y_1) <= sum Phi(x_k, y_k) <= Phi(M, y_1) whenever
/// m <= sum_{i<=k} x_i <= M for all k and y_1 >= ... >= y_n >= 0.
SandwichResult bilinear_bound_check(const BilinearMap& phi, const FiniteSequence& xs, const FiniteSequence& ys,
                                    const Element& m, const Element& big_m);

}  // namespace abel
