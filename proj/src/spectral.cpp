#include "abel/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "abel/error.hpp"

namespace abel {

namespace {

void require_symmetric(const Matrix& a, std::string_view op) {
  if (a.rows() != a.cols()) throw DomainError(std::string(op) + ": matrix is not square");
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      if (a(i, j) != a(j, i)) {
        std::ostringstream msg;
        msg << op << ": matrix is not symmetric at (" << i << ", " << j << ")";
        throw DomainError(msg.str());
      }
    }
  }
}

double off_diagonal_mass(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

// One Jacobi rotation annihilating a(p, q); keeps `a` exactly symmetric and
// accumulates the rotation into the columns of `v`.
void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    if (r == p || r == q) continue;
    const double g = a(r, p);
    const double h = a(r, q);
    const double rp = g - s * (h + g * tau);
    const double rq = h + s * (g - h * tau);
    a(r, p) = rp;
    a(p, r) = rp;
    a(r, q) = rq;
    a(q, r) = rq;
  }
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    const double g = v(r, p);
    const double h = v(r, q);
    v(r, p) = g - s * (h + g * tau);
    v(r, q) = h + s * (g - h * tau);
  }
}

std::vector<double> eigenvalues_of(const Matrix& a) { return sym_eigendecompose(a).eigenvalues; }

std::string spectrum_witness(std::string_view what, std::size_t index, double eig) {
  std::ostringstream msg;
  msg.precision(17);
  msg << what << " (index " << index << ", eigenvalue " << eig << ")";
  return msg.str();
}

// Spectra must sit inside the interval on which f is nondecreasing; the slack
// matches the Loewner tolerance so PSD matrices with rounding-level negative
// eigenvalues are accepted.
void require_spectrum_in(const Matrix& m, const Interval& interval, std::size_t index, std::string_view chain,
                         std::string_view fn) {
  const double slack = kMatrixOrderTol * (1.0 + m.norm());
  for (double eig : eigenvalues_of(m)) {
    if (eig < interval.lo - slack || eig > interval.hi + slack) {
      throw PreconditionError(
          spectrum_witness(std::string(chain) + " spectrum leaves the interval where '" + std::string(fn) +
                               "' is nondecreasing",
                           index, eig),
          index);
    }
  }
}

bool within(double lhs, double rhs, double rel) { return lhs <= rhs + rel * (1.0 + std::abs(rhs)); }

void require_chain_hypotheses(std::span<const Matrix> as, std::span<const Matrix> bs) {
  if (as.empty()) throw DomainError("trace inequality needs at least one matrix");
  if (as.size() != bs.size()) throw DomainError("chains A and B have different lengths");
  const PsdChain chain = loewner_chain_verify(as, bs);
  if (!chain.hypotheses_hold()) {
    throw PreconditionError(spectrum_witness(chain.detail, chain.witness_index.value_or(0), chain.witness_eigenvalue),
                            chain.witness_index.value_or(0));
  }
}

}  // namespace

Matrix SpectralDecomposition::reconstruct() const {
  const auto n = static_cast<Eigen::Index>(eigenvalues.size());
  Eigen::VectorXd lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) lambda(i) = eigenvalues[std::size_t(i)];
  return eigenvectors * lambda.asDiagonal() * eigenvectors.transpose();
}

SpectralDecomposition sym_eigendecompose(const Matrix& input, const JacobiOptions& options) {
  require_symmetric(input, "sym_eigendecompose");
  const Eigen::Index n = input.rows();
  Matrix a = input;
  Matrix v = Matrix::Identity(n, n);
  const double threshold = options.relative_threshold * input.norm();

  int sweep = 0;
  while (off_diagonal_mass(a) > threshold) {
    if (sweep == options.max_sweeps) {
      throw ConvergenceError("Jacobi eigendecomposition did not converge within the sweep budget");
    }
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    ++sweep;
  }

  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(Eigen::Index(i), Eigen::Index(i)) > a(Eigen::Index(j), Eigen::Index(j));
  });

  SpectralDecomposition out;
  out.eigenvalues.reserve(order.size());
  out.eigenvectors.resize(n, n);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto src = Eigen::Index(order[k]);
    out.eigenvalues.push_back(a(src, src));
    out.eigenvectors.col(Eigen::Index(k)) = v.col(src);
  }
  return out;
}

SpectralDecomposition sym_eigendecompose(const Element& a, const JacobiOptions& options) {
  return sym_eigendecompose(a.to_matrix(), options);
}

DecompositionQuality decomposition_quality(const Matrix& a, const SpectralDecomposition& d) {
  const auto n = d.eigenvectors.cols();
  DecompositionQuality q;
  q.reconstruction = (d.reconstruct() - a).norm() / std::max(a.norm(), 1.0);
  q.orthogonality = (d.eigenvectors.transpose() * d.eigenvectors - Matrix::Identity(n, n)).norm();
  return q;
}

Matrix symmetrized(const Matrix& m) {
  Matrix out = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      out(i, j) = avg;
      out(j, i) = avg;
    }
  }
  return out;
}

Matrix matrix_function(const Matrix& a, const ScalarFunction& f) {
  const SpectralDecomposition d = sym_eigendecompose(a);
  const auto n = static_cast<Eigen::Index>(d.eigenvalues.size());
  Eigen::VectorXd mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double eig = d.eigenvalues[std::size_t(i)];
    if (!f.domain().contains(eig)) {
      throw DomainError(spectrum_witness("eigenvalue outside the domain of '" + f.name() + "'", std::size_t(i) + 1, eig));
    }
    mapped(i) = f(eig);
  }
  return symmetrized(d.eigenvectors * mapped.asDiagonal() * d.eigenvectors.transpose());
}

double trace_function(const Matrix& a, const ScalarFunction& f) {
  const std::vector<double> eigs = eigenvalues_of(a);
  double sum = 0.0;
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    if (!f.domain().contains(eigs[i])) {
      throw DomainError(spectrum_witness("eigenvalue outside the domain of '" + f.name() + "'", i + 1, eigs[i]));
    }
    sum += f(eigs[i]);
  }
  return sum;
}

double trace_product(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DomainError("trace_product: dimension mismatch");
  // Tr(AB) = sum_ij a_ij b_ji.
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) sum += a(i, j) * b(j, i);
  return sum;
}

double frobenius_via_trace(const Matrix& a) { return std::sqrt(std::max(0.0, trace_product(a, a))); }

PsdChain loewner_chain_verify(std::span<const Matrix> chain, std::span<const Matrix> dominating, double tol) {
  PsdChain out;
  out.matrices.assign(chain.begin(), chain.end());
  if (chain.empty()) {
    out.detail = "empty chain";
    return out;
  }
  const Eigen::Index n = chain.front().rows();
  for (const Matrix& m : chain) {
    if (m.rows() != n || m.cols() != n) throw DomainError("loewner_chain_verify: chain is not homogeneous");
  }

  auto fail = [&](std::size_t index, double eig, std::string what) {
    if (!out.witness_index) {
      out.witness_index = index;
      out.witness_eigenvalue = eig;
      out.detail = std::move(what);
    }
  };

  out.decreasing = true;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const PartialOrderResult r = compare(Element::matrix(chain[k + 1]), Element::matrix(chain[k]), tol);
    if (!r.le()) {
      out.decreasing = false;
      fail(k + 1, r.witness_value, "chain is not decreasing: A_k >= A_{k+1} fails");
      break;
    }
  }

  const Element last = Element::matrix(chain.back());
  const PartialOrderResult tail = compare(Element::zero(last.shape()), last, tol);
  out.terminal_nonneg = tail.le();
  if (!out.terminal_nonneg) fail(chain.size(), tail.witness_value, "last matrix of the chain is not positive semidefinite");

  if (!dominating.empty()) {
    if (dominating.size() != chain.size()) throw DomainError("loewner_chain_verify: dominating chain length differs");
    bool dominated = true;
    Matrix sa = Matrix::Zero(n, n);
    Matrix sb = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < chain.size(); ++j) {
      if (dominating[j].rows() != n || dominating[j].cols() != n) {
        throw DomainError("loewner_chain_verify: dominating chain dimension differs");
      }
      sa += chain[j];
      sb += dominating[j];
      const PartialOrderResult r = compare(Element::matrix(sa), Element::matrix(sb), tol);
      if (!r.le()) {
        dominated = false;
        fail(j + 1, r.witness_value, "prefix sums are not dominated: sum_{k<=j} A_k <= sum_{k<=j} B_k fails");
        break;
      }
    }
    out.dominated = dominated;
  }
  return out;
}

TraceInequality trace_tomic_weyl_check(std::span<const Matrix> as, std::span<const Matrix> bs,
                                       const ScalarFunction& f) {
  if (!f.convex()) throw PreconditionError("function '" + f.name() + "' is not convex", 0);
  require_chain_hypotheses(as, bs);
  for (std::size_t k = 0; k < as.size(); ++k) {
    require_spectrum_in(as[k], f.traits().nondecreasing_on, k + 1, "A", f.name());
    require_spectrum_in(bs[k], f.traits().nondecreasing_on, k + 1, "B", f.name());
  }
  TraceInequality out;
  for (std::size_t k = 0; k < as.size(); ++k) {
    out.lhs += trace_function(as[k], f);
    out.rhs += trace_function(bs[k], f);
  }
  out.slack = out.rhs - out.lhs;
  out.holds = within(out.lhs, out.rhs, 1e-8);
  return out;
}

ChungResult chung_intermediate_check(std::span<const Matrix> as, std::span<const Matrix> bs) {
  require_chain_hypotheses(as, bs);
  ChungResult out;
  for (std::size_t k = 0; k < as.size(); ++k) {
    out.sum_trace_a2 += trace_product(as[k], as[k]);
    out.cross_term += trace_product(as[k], bs[k]);
    out.sum_trace_b2 += trace_product(bs[k], bs[k]);
  }
  const double cs_lhs = out.cross_term * out.cross_term;
  const double cs_rhs = out.sum_trace_a2 * out.sum_trace_b2;
  out.first_link = within(out.sum_trace_a2, out.cross_term, 1e-8);
  out.cauchy_schwarz_holds = within(cs_lhs, cs_rhs, 1e-8);
  out.chung_holds = within(out.sum_trace_a2, out.sum_trace_b2, 1e-8);
  auto margin = [](double lhs, double rhs) { return (rhs - lhs) / (1.0 + std::abs(rhs)); };
  out.worst_slack = std::min({margin(out.sum_trace_a2, out.cross_term), margin(cs_lhs, cs_rhs),
                              margin(out.sum_trace_a2, out.sum_trace_b2)});
  return out;
}

TraceInequality gradient_step_check(const Matrix& a, const Matrix& x, const ScalarFunction& f) {
  if (!f.convex()) throw PreconditionError("function '" + f.name() + "' is not convex", 0);
  if (!f.has_derivative()) {
    throw PreconditionError("function '" + f.name() + "' is not continuously differentiable", 0);
  }
  const Matrix grad = matrix_function(a, f.derivative());
  const Matrix step = x - a;
  TraceInequality out;
  // Tr(PQ) of two symmetric matrices needs no symmetrization of the product.
  out.lhs = trace_product(grad, step);
  out.rhs = trace_function(x, f) - trace_function(a, f);
  out.slack = out.rhs - out.lhs;
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

TraceInequality trace_monotone_check(const Matrix& u, const Matrix& v, const ScalarFunction& h) {
  const PartialOrderResult r = compare(Element::matrix(u), Element::matrix(v), kMatrixOrderTol);
  if (!r.le()) throw PreconditionError(spectrum_witness("U <= V fails", r.witness + 1, r.witness_value), r.witness + 1);
  require_spectrum_in(u, h.traits().nondecreasing_on, 1, "U", h.name());
  require_spectrum_in(v, h.traits().nondecreasing_on, 2, "V", h.name());
  TraceInequality out;
  out.lhs = trace_function(u, h);
  out.rhs = trace_function(v, h);
  out.slack = out.rhs - out.lhs;
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

TraceInequality trace_convexity_check(const Matrix& a, const Matrix& b, double lambda, const ScalarFunction& f) {
  if (!f.convex()) throw PreconditionError("function '" + f.name() + "' is not convex", 0);
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("trace_convexity_check: lambda must lie in [0, 1]");
  const Matrix mix = symmetrized(lambda * a + (1.0 - lambda) * b);
  TraceInequality out;
  out.lhs = trace_function(mix, f);
  out.rhs = lambda * trace_function(a, f) + (1.0 - lambda) * trace_function(b, f);
  out.slack = out.rhs - out.lhs;
  out.holds = out.lhs <= out.rhs + 1e-9;
  return out;
}

}  // namespace abel
