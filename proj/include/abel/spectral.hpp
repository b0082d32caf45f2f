#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abel/element.hpp"
#include "abel/functions.hpp"
#include "abel/ordered.hpp"

namespace abel {

/// Eigenvalues in decreasing order with matching orthonormal eigenvector
/// columns.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  Matrix reconstruct() const;
};

struct JacobiOptions {
  /// Stop once the off-diagonal Frobenius mass drops below this fraction of ||A||_F.
  double relative_threshold = 1e-14;
  int max_sweeps = 50;
};

/// Cyclic Jacobi eigendecomposition of an exactly symmetric matrix.
/// Throws DomainError for non-square or non-symmetric input and
/// ConvergenceError if the sweep budget runs out.
SpectralDecomposition sym_eigendecompose(const Matrix& a, const JacobiOptions& options = {});
SpectralDecomposition sym_eigendecompose(const Element& a, const JacobiOptions& options = {});

/// Relative reconstruction error ||Q diag(l) Q^T - A||_F / max(||A||_F, 1) and
/// orthogonality defect ||Q^T Q - I||_F.
struct DecompositionQuality {
  double reconstruction = 0.0;
  double orthogonality = 0.0;
};
DecompositionQuality decomposition_quality(const Matrix& a, const SpectralDecomposition& d);

/// f(A) = Q f(Lambda) Q^T, symmetrized so the result is exactly symmetric.
/// Throws DomainError naming the first eigenvalue outside f's domain.
Matrix matrix_function(const Matrix& a, const ScalarFunction& f);

/// Tr f(A) = sum_i f(lambda_i), with the same domain check.
double trace_function(const Matrix& a, const ScalarFunction& f);

/// Tr(AB) for symmetric A, B, summed entrywise without forming the product.
double trace_product(const Matrix& a, const Matrix& b);

/// Frobenius norm computed as (Tr A^2)^{1/2}.
double frobenius_via_trace(const Matrix& a);

/// Symmetrize (M + M^T)/2; the result is exactly symmetric.
Matrix symmetrized(const Matrix& m);

/// A chain of symmetric matrices with Loewner-verified flags. The flags are
/// populated only by loewner_chain_verify.
struct PsdChain {
  std::vector<Matrix> matrices;
  bool decreasing = false;
  bool terminal_nonneg = false;
  /// Set when a dominating chain was supplied: sum_{k<=j} A_k <= sum_{k<=j} B_k for all j.
  std::optional<bool> dominated;
  /// 1-based index of the first failing check and the eigenvalue that shows it.
  std::optional<std::size_t> witness_index;
  double witness_eigenvalue = 0.0;
  std::string detail;

  bool hypotheses_hold() const { return decreasing && terminal_nonneg && dominated.value_or(true); }
};

PsdChain loewner_chain_verify(std::span<const Matrix> chain, std::span<const Matrix> dominating = {},
                              double tol = kMatrixOrderTol);

struct TraceInequality {
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs; nonnegative when the inequality holds exactly.
  double slack = 0.0;
  bool holds = false;
};

/// sum_k Tr f(A_k) <= sum_k Tr f(B_k) for a decreasing PSD chain A with
/// prefix sums dominated by those of B and f nondecreasing convex on an
/// interval containing every spectrum. Holds within 1e-8 (1 + |rhs|).
/// Throws PreconditionError when a hypothesis fails.
TraceInequality trace_tomic_weyl_check(std::span<const Matrix> as, std::span<const Matrix> bs,
                                       const ScalarFunction& f);

struct ChungResult {
  double sum_trace_a2 = 0.0;
  double cross_term = 0.0;
  double sum_trace_b2 = 0.0;
  bool first_link = false;
  bool cauchy_schwarz_holds = false;
  bool chung_holds = false;
  /// Smallest relative margin over the three links.
  double worst_slack = 0.0;

  bool all_hold() const { return first_link && cauchy_schwarz_holds && chung_holds; }
};

/// Chung's trace inequality through its intermediate steps:
///   sum Tr A_k^2 <= sum Tr A_k B_k,
///   (sum Tr A_k B_k)^2 <= (sum Tr A_k^2)(sum Tr B_k^2),
///   sum Tr A_k^2 <= sum Tr B_k^2,
/// each within 1e-8 (1 + |rhs|). Same hypotheses as trace_tomic_weyl_check.
ChungResult chung_intermediate_check(std::span<const Matrix> as, std::span<const Matrix> bs);

/// Tr[f'(A)(X - A)] <= Tr f(X) - Tr f(A) for C^1 convex f; holds within 1e-9.
TraceInequality gradient_step_check(const Matrix& a, const Matrix& x, const ScalarFunction& f);

/// U <= V implies Tr h(U) <= Tr h(V) for increasing continuous h; holds
/// within 1e-9. Throws PreconditionError if U <= V fails.
TraceInequality trace_monotone_check(const Matrix& u, const Matrix& v, const ScalarFunction& h);

/// Tr f(lambda A + (1 - lambda) B) <= lambda Tr f(A) + (1 - lambda) Tr f(B)
/// for convex f; holds within 1e-9.
TraceInequality trace_convexity_check(const Matrix& a, const Matrix& b, double lambda, const ScalarFunction& f);

}  // namespace abel
