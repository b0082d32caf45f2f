#include "abel/ordered.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "abel/error.hpp"
#include "abel/spectral.hpp"

namespace abel {

double hypothesis_tol(Kind kind) { return kind == Kind::symmetric_matrix ? kMatrixOrderTol : 0.0; }

std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::less_equal:
      return "less_equal";
    case Relation::greater_equal:
      return "greater_equal";
    case Relation::equal:
      return "equal";
    case Relation::incomparable:
      return "incomparable";
  }
  return "unknown";
}

std::string_view to_string(Direction d) { return d == Direction::decreasing ? "decreasing" : "increasing"; }

namespace {

PartialOrderResult compare_coordinates(std::span<const double> x, std::span<const double> y, double tol) {
  std::optional<std::size_t> first_below;  // y_i - x_i < -tol: x <= y fails
  std::optional<std::size_t> first_above;  // y_i - x_i > tol: x >= y fails
  std::size_t largest = 0;
  double largest_abs = -1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = y[i] - x[i];
    if (d < -tol && !first_below) first_below = i;
    if (d > tol && !first_above) first_above = i;
    if (std::abs(d) > largest_abs) {
      largest_abs = std::abs(d);
      largest = i;
    }
  }
  PartialOrderResult r;
  auto diff = [&](std::size_t i) { return y[i] - x[i]; };
  if (!first_below && !first_above) {
    r.relation = Relation::equal;
    r.witness = largest;
  } else if (!first_below) {
    r.relation = Relation::less_equal;
    r.witness = *first_above;
  } else if (!first_above) {
    r.relation = Relation::greater_equal;
    r.witness = *first_below;
  } else {
    r.relation = Relation::incomparable;
    r.witness = *first_below;
  }
  r.witness_value = diff(r.witness);
  return r;
}

PartialOrderResult compare_loewner(const Element& x, const Element& y, double tol) {
  const Matrix d = y.to_matrix() - x.to_matrix();
  const std::vector<double> eig = sym_eigendecompose(d).eigenvalues;  // decreasing
  const double slack = tol * (1.0 + d.norm());
  const std::size_t last = eig.size() - 1;
  const bool le = eig[last] >= -slack;  // y - x PSD
  const bool ge = eig[0] <= slack;      // x - y PSD
  PartialOrderResult r;
  if (le && ge) {
    r.relation = Relation::equal;
    r.witness = std::abs(eig[0]) >= std::abs(eig[last]) ? 0 : last;
  } else if (le) {
    r.relation = Relation::less_equal;
    r.witness = 0;
  } else if (ge) {
    r.relation = Relation::greater_equal;
    r.witness = last;
  } else {
    r.relation = Relation::incomparable;
    r.witness = last;
  }
  r.witness_value = eig[r.witness];
  return r;
}

}  // namespace

PartialOrderResult compare(const Element& x, const Element& y, double tol) {
  if (x.shape() != y.shape()) {
    throw DomainError("compare: shape mismatch " + describe(x.shape()) + " vs " + describe(y.shape()));
  }
  if (!(tol >= 0.0)) throw DomainError("compare: tolerance must be nonnegative");
  if (x.kind() == Kind::symmetric_matrix) return compare_loewner(x, y, tol);
  return compare_coordinates(x.data(), y.data(), tol);
}

double order_floor(const Element& e) {
  if (e.kind() == Kind::symmetric_matrix) return sym_eigendecompose(e).eigenvalues.back();
  return *std::min_element(e.data().begin(), e.data().end());
}

LatticeParts pos_neg_parts(const Element& x) {
  if (x.kind() == Kind::symmetric_matrix) {
    throw UnsupportedError("pos_neg_parts: the Loewner order on symmetric matrices is not a lattice");
  }
  std::vector<double> plus(x.data().size());
  std::vector<double> minus(x.data().size());
  std::vector<double> abs(x.data().size());
  for (std::size_t i = 0; i < plus.size(); ++i) {
    const double v = x.data()[i];
    plus[i] = v > 0.0 ? v : 0.0;
    minus[i] = v < 0.0 ? -v : 0.0;
    abs[i] = plus[i] + minus[i];
  }
  if (x.kind() == Kind::scalar) {
    return {Element::scalar(plus[0]), Element::scalar(minus[0]), Element::scalar(abs[0])};
  }
  return {Element::vector(std::move(plus)), Element::vector(std::move(minus)), Element::vector(std::move(abs))};
}

OrderUnit::OrderUnit(Element unit) : unit_(std::move(unit)) {
  if (unit_.kind() == Kind::symmetric_matrix) {
    const SpectralDecomposition d = sym_eigendecompose(unit_);
    if (!(d.eigenvalues.back() > 0.0)) {
      throw DomainError("order unit must be positive definite (smallest eigenvalue is not > 0)");
    }
    Eigen::VectorXd inv_sqrt(Eigen::Index(d.eigenvalues.size()));
    for (std::size_t i = 0; i < d.eigenvalues.size(); ++i) inv_sqrt(Eigen::Index(i)) = 1.0 / std::sqrt(d.eigenvalues[i]);
    inv_sqrt_ = symmetrized(d.eigenvectors * inv_sqrt.asDiagonal() * d.eigenvectors.transpose());
  } else {
    for (double v : unit_.data()) {
      if (!(v > 0.0)) throw DomainError("order unit must have every coordinate > 0");
    }
  }
}

OrderUnit OrderUnit::canonical(const Shape& shape) {
  switch (shape.kind) {
    case Kind::scalar:
      return OrderUnit(Element::scalar(1.0));
    case Kind::vector:
      return OrderUnit(Element::vector(std::vector<double>(shape.dim, 1.0)));
    case Kind::symmetric_matrix:
      return OrderUnit(Element::identity(shape.dim));
  }
  throw DomainError("unknown kind");
}

double order_unit_norm(const Element& x, const OrderUnit& u) {
  if (x.shape() != u.unit().shape()) throw DomainError("order_unit_norm: element and unit shapes differ");
  if (x.kind() == Kind::symmetric_matrix) {
    // -lambda U <= A <= lambda U  <=>  spectrum of U^{-1/2} A U^{-1/2} in [-lambda, lambda].
    const Matrix scaled = symmetrized(u.inv_sqrt_ * x.to_matrix() * u.inv_sqrt_);
    const std::vector<double> eig = sym_eigendecompose(scaled).eigenvalues;
    return std::max(std::abs(eig.front()), std::abs(eig.back()));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < x.data().size(); ++i) worst = std::max(worst, std::abs(x.data()[i]) / u.unit().data()[i]);
  return worst;
}

double norm(const Element& x) {
  if (x.kind() == Kind::symmetric_matrix) {
    const std::vector<double> eig = sym_eigendecompose(x).eigenvalues;
    return std::max(std::abs(eig.front()), std::abs(eig.back()));
  }
  double worst = 0.0;
  for (double v : x.data()) worst = std::max(worst, std::abs(v));
  return worst;
}

ChainVerdict is_monotone_chain(const FiniteSequence& xs, Direction direction, bool require_nonneg_tail, double tol) {
  ChainVerdict v;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const Element& cur = xs[k];
    const Element& next = xs[k + 1];
    const PartialOrderResult r =
        direction == Direction::decreasing ? compare(next, cur, tol) : compare(cur, next, tol);
    if (!r.le()) {
      v.monotone = false;
      v.violation = k + 1;
      v.detail = r;
      std::ostringstream msg;
      msg << "chain is not " << to_string(direction) << " at step " << k + 1 << " -> " << k + 2 << " ("
          << to_string(r.relation) << ")";
      v.reason = msg.str();
      return v;
    }
  }
  if (require_nonneg_tail) {
    const std::size_t tail = direction == Direction::decreasing ? xs.size() - 1 : 0;
    const PartialOrderResult r = compare(Element::zero(xs.shape()), xs[tail], tol);
    if (!r.le()) {
      v.nonneg_tail = false;
      v.violation = tail + 1;
      v.detail = r;
      std::ostringstream msg;
      msg << "chain element " << tail + 1 << " is not >= 0";
      v.reason = msg.str();
    }
  }
  return v;
}

}  // namespace abel
