#pragma once

#include <cstddef>
#include <vector>

#include "abel/element.hpp"
#include "abel/majorize.hpp"
#include "abel/ordered.hpp"
#include "abel/random.hpp"

/// Random instances that satisfy the hypotheses of the checks by
/// construction. Scalar and vector data are multiples of 1/64 of moderate
/// size, so sums and differences of them are exact and exact hypothesis
/// checks cannot be tripped by rounding.
namespace abel::instances {

/// Weights with prefix sums in [0, 1] and total exactly 1; negative weights
/// occur. With `classical`, every weight is >= 0.
std::vector<double> steffensen_weights(Rng& rng, std::size_t n, bool classical = false);

/// Monotone dyadic points in [lo, hi].
std::vector<double> monotone_points(Rng& rng, std::size_t n, double lo, double hi, Direction direction);

/// x_1 >= ... >= x_n. With `nonneg`, x_n >= 0; otherwise x_n may have
/// either sign. Matrix chains are built from PSD increments.
FiniteSequence decreasing_chain(Rng& rng, const Shape& shape, std::size_t n, bool nonneg, double scale = 1.0);
FiniteSequence increasing_chain(Rng& rng, const Shape& shape, std::size_t n, bool nonneg, double scale = 1.0);

/// y with every prefix sum (or every suffix sum) >= 0.
FiniteSequence nonneg_prefix_sequence(Rng& rng, const Shape& shape, std::size_t n, double scale = 1.0);
FiniteSequence nonneg_suffix_sequence(Rng& rng, const Shape& shape, std::size_t n, double scale = 1.0);

/// Random element of the shape on the dyadic grid (PSD-free symmetric for
/// matrices).
Element dyadic_element(Rng& rng, const Shape& shape, double lo, double hi);

/// A_1 >= ... >= A_n >= 0 and B_k PSD with sum_{k<=j} A_k <= sum_{k<=j} B_k.
/// A_n = Q L Q^T with L >= 0, A_k = A_{k+1} + P_k with P_k PSD, and
/// B_k = A_k + E_k + c_k I with E_k random symmetric and c_k >= 0 the
/// smallest shift (plus a margin) restoring prefix domination and PSD-ness.
struct PsdChainInstance {
  std::vector<Matrix> as;
  std::vector<Matrix> bs;
};
PsdChainInstance psd_chain(Rng& rng, std::size_t dim, std::size_t n);

/// Convex piecewise-linear function with `breakpoints` dyadic breakpoints.
/// With `nondecreasing`, the first slope is >= 0.
PwlConvexFunction pwl_convex(Rng& rng, std::size_t breakpoints, bool nondecreasing = false);

/// y and x with x submajorized by y: x = D y - r for a doubly stochastic D
/// (an average of permutation matrices) and r >= 0; r = 0 gives strong
/// majorization.
struct MajorizationPair {
  std::vector<double> x;
  std::vector<double> y;
};
MajorizationPair submajorized_pair(Rng& rng, std::size_t n, bool strong, double lo, double hi);

}  // namespace abel::instances
