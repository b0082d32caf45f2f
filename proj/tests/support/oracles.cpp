#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace oracle {

std::vector<double> eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  std::vector<double> v(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(v.rbegin(), v.rend());
  return v;
}

Verdict sampled_loewner(const Matrix& a, const Matrix& b, std::mt19937_64& rng, std::size_t directions, double tol) {
  const Matrix d = b - a;
  const double scale = tol * (1.0 + d.norm());
  std::normal_distribution<double> normal;
  bool some_pos = false;
  bool some_neg = false;
  for (std::size_t s = 0; s < directions; ++s) {
    Eigen::VectorXd v(d.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = normal(rng);
    v.normalize();
    const double q = v.dot(d * v);
    if (q > scale) some_pos = true;
    if (q < -scale) some_neg = true;
  }
  if (some_pos && some_neg) return Verdict::incomparable;
  if (some_neg) return Verdict::greater_equal;
  if (some_pos) return Verdict::less_equal;
  return Verdict::equal;
}

namespace {

// Largest sum over k-element subsets, for every k = 1..n.
std::vector<double> best_subset_sums(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> best(n + 1, -INFINITY);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double s = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        s += x[i];
        ++k;
      }
    }
    best[k] = std::max(best[k], s);
  }
  return best;
}

}  // namespace

bool subset_weak_majorization(const std::vector<double>& x, const std::vector<double>& y, double tol) {
  const std::vector<double> bx = best_subset_sums(x);
  const std::vector<double> by = best_subset_sums(y);
  for (std::size_t k = 1; k < bx.size(); ++k) {
    if (bx[k] > by[k] + tol * (1.0 + std::abs(by[k]))) return false;
  }
  return true;
}

bool convex_test_majorization(const std::vector<double>& x, const std::vector<double>& y, double tol) {
  double sx = 0.0;
  double sy = 0.0;
  for (double v : x) sx += v;
  for (double v : y) sy += v;
  if (std::abs(sx - sy) > tol * (1.0 + std::abs(sy))) return false;
  std::vector<double> ts = x;
  ts.insert(ts.end(), y.begin(), y.end());
  for (double t : ts) {
    double fx = 0.0;
    double fy = 0.0;
    for (double v : x) fx += std::abs(v - t);
    for (double v : y) fy += std::abs(v - t);
    if (fx > fy + tol * (1.0 + fy)) return false;
  }
  return true;
}

long double trace_product(const Matrix& a, const Matrix& b) {
  long double t = 0.0L;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) t += static_cast<long double>(a(i, k)) * b(k, i);
  return t;
}

}  // namespace oracle
