#pragma once

// Independent reference computations used only by the tests. None of them
// call into the library's eigen solver, order comparisons or prefix-sum
// logic.

#include <Eigen/Dense>

#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;

/// Eigenvalues in decreasing order from Eigen's self-adjoint solver.
std::vector<double> eigenvalues(const Matrix& a);

enum class Verdict { less_equal, greater_equal, equal, incomparable };

/// Loewner relation of A and B judged by <(B - A)v, v> over `directions`
/// random unit vectors, with slack tol.
Verdict sampled_loewner(const Matrix& a, const Matrix& b, std::mt19937_64& rng, std::size_t directions = 1000,
                        double tol = 1e-10);

/// x weakly submajorized by y: for every k, the largest sum of k entries of
/// x is at most the largest sum of k entries of y (all subsets enumerated).
bool subset_weak_majorization(const std::vector<double>& x, const std::vector<double>& y, double tol = 1e-12);

/// Strong majorization through the convex-function test: equal totals and
/// sum |x_i - t| <= sum |y_i - t| at every t among the entries.
bool convex_test_majorization(const std::vector<double>& x, const std::vector<double>& y, double tol = 1e-12);

/// Tr(AB) = sum_ik a_ik b_ki accumulated in long double.
long double trace_product(const Matrix& a, const Matrix& b);

}  // namespace oracle
