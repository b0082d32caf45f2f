#include "abel/element.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "abel/error.hpp"

namespace abel {

std::string_view to_string(Kind kind) {
  switch (kind) {
    case Kind::scalar:
      return "scalar";
    case Kind::vector:
      return "vector";
    case Kind::symmetric_matrix:
      return "symmetric_matrix";
  }
  return "unknown";
}

Kind parse_kind(std::string_view name) {
  if (name == "scalar") return Kind::scalar;
  if (name == "vector") return Kind::vector;
  if (name == "symmetric_matrix" || name == "matrix") return Kind::symmetric_matrix;
  throw DomainError("unknown element kind '" + std::string(name) + "'");
}

std::string describe(const Shape& shape) {
  std::ostringstream out;
  out << to_string(shape.kind);
  if (shape.kind != Kind::scalar) out << '(' << shape.dim << ')';
  return out.str();
}

Element Element::scalar(double value) { return Element(Shape::scalar(), {value}); }

Element Element::vector(std::vector<double> coords) {
  if (coords.empty()) throw DomainError("vector element needs a positive dimension");
  const std::size_t n = coords.size();
  return Element(Shape::vector(n), std::move(coords));
}

Element Element::vector(std::initializer_list<double> coords) {
  return vector(std::vector<double>(coords));
}

Element Element::matrix(std::size_t n, std::vector<double> row_major) {
  if (n == 0) throw DomainError("matrix element needs a positive dimension");
  if (row_major.size() != n * n) throw DomainError("matrix data does not have n*n entries");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (row_major[i * n + j] != row_major[j * n + i]) {
        std::ostringstream msg;
        msg << "matrix is not symmetric at (" << i << ", " << j << ")";
        throw DomainError(msg.str());
      }
    }
  }
  return Element(Shape::matrix(n), std::move(row_major));
}

Element Element::matrix(const Matrix& m) {
  if (m.rows() != m.cols()) throw DomainError("matrix element must be square");
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<double> data(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) data[i * n + j] = m(Eigen::Index(i), Eigen::Index(j));
  return matrix(n, std::move(data));
}

Element Element::diagonal(std::span<const double> diag) {
  const std::size_t n = diag.size();
  std::vector<double> data(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) data[i * n + i] = diag[i];
  return matrix(n, std::move(data));
}

Element Element::identity(std::size_t n) {
  std::vector<double> ones(n, 1.0);
  return diagonal(ones);
}

Element Element::zero(const Shape& shape) {
  if (shape.dim == 0) throw DomainError("zero element needs a positive dimension");
  if (shape.kind == Kind::scalar && shape.dim != 1) throw DomainError("scalar shape must have dim 1");
  return Element(shape, std::vector<double>(shape.size(), 0.0));
}

Element Element::from_data(const Shape& shape, std::vector<double> data) {
  switch (shape.kind) {
    case Kind::scalar:
      if (data.size() != 1) throw DomainError("scalar element needs exactly one coordinate");
      return scalar(data[0]);
    case Kind::vector:
      if (data.size() != shape.dim) throw DomainError("vector data does not match its dimension");
      return vector(std::move(data));
    case Kind::symmetric_matrix:
      return matrix(shape.dim, std::move(data));
  }
  throw DomainError("unknown element kind");
}

double Element::value() const {
  if (kind() != Kind::scalar) throw DomainError("value() requires a scalar element, got " + describe(shape_));
  return data_[0];
}

Matrix Element::to_matrix() const {
  if (kind() != Kind::symmetric_matrix) throw DomainError("to_matrix() requires a matrix element");
  const auto n = static_cast<Eigen::Index>(dim());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = data_[std::size_t(i * n + j)];
  return m;
}

bool Element::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

void Element::require_same_shape(const Element& other, std::string_view op) const {
  if (shape_ != other.shape_) {
    throw DomainError(std::string(op) + ": shape mismatch " + describe(shape_) + " vs " +
                      describe(other.shape_));
  }
}

Element& Element::operator+=(const Element& other) {
  require_same_shape(other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same_shape(other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Element& Element::operator*=(double factor) {
  for (double& v : data_) v *= factor;
  return *this;
}

FiniteSequence::FiniteSequence(std::vector<Element> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw DomainError("a finite sequence needs at least one element");
  const Shape& s = elements_.front().shape();
  for (std::size_t i = 1; i < elements_.size(); ++i) {
    if (elements_[i].shape() != s) {
      std::ostringstream msg;
      msg << "sequence is not homogeneous: element " << i + 1 << " is " << describe(elements_[i].shape())
          << ", expected " << describe(s);
      throw DomainError(msg.str());
    }
  }
}

FiniteSequence FiniteSequence::scalars(std::span<const double> values) {
  std::vector<Element> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(Element::scalar(v));
  return FiniteSequence(std::move(out));
}

FiniteSequence FiniteSequence::scalars(std::initializer_list<double> values) {
  return scalars(std::span<const double>(values.begin(), values.size()));
}

const Shape& FiniteSequence::shape() const {
  if (elements_.empty()) throw DomainError("empty sequence has no shape");
  return elements_.front().shape();
}

FiniteSequence FiniteSequence::prefix_sums() const {
  std::vector<Element> out;
  out.reserve(elements_.size());
  Element running = Element::zero(shape());
  for (const Element& e : elements_) {
    running += e;
    out.push_back(running);
  }
  return FiniteSequence(std::move(out));
}

FiniteSequence FiniteSequence::zero_padded(std::size_t count) const {
  std::vector<Element> out(count, Element::zero(shape()));
  out.insert(out.end(), elements_.begin(), elements_.end());
  return FiniteSequence(std::move(out));
}

double normalized_residual(const Element& a, const Element& b, double rel_tol, double abs_floor) {
  if (a.shape() != b.shape()) throw DomainError("normalized_residual: shape mismatch");
  const double floor_scale = rel_tol > 0.0 ? abs_floor / rel_tol : 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const double x = a.data()[i];
    const double y = b.data()[i];
    const double diff = std::abs(x - y);
    if (diff == 0.0) continue;
    const double scale = std::max({std::abs(x), std::abs(y), floor_scale});
    worst = std::max(worst, scale > 0.0 ? diff / scale : INFINITY);
  }
  return worst;
}

bool approx_equal(const Element& a, const Element& b, double rel_tol, double abs_floor) {
  return normalized_residual(a, b, rel_tol, abs_floor) <= rel_tol;
}

}  // namespace abel
