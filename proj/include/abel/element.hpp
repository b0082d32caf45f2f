#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace abel {

using Matrix = Eigen::MatrixXd;

enum class Kind { scalar, vector, symmetric_matrix };

std::string_view to_string(Kind kind);
Kind parse_kind(std::string_view name);

struct Shape {
  Kind kind = Kind::scalar;
  std::size_t dim = 1;

  static Shape scalar() { return {Kind::scalar, 1}; }
  static Shape vector(std::size_t n) { return {Kind::vector, n}; }
  static Shape matrix(std::size_t n) { return {Kind::symmetric_matrix, n}; }

  /// Number of stored coordinates (dim*dim for matrices).
  std::size_t size() const { return kind == Kind::symmetric_matrix ? dim * dim : dim; }

  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string describe(const Shape& shape);

/// A point of one of the ordered spaces used throughout the library: the real
/// line, R^N with the coordinatewise order, or the symmetric N x N matrices
/// with the Loewner order. Matrices are stored row-major and are exactly
/// symmetric.
class Element {
 public:
  Element() = default;

  static Element scalar(double value);
  static Element vector(std::vector<double> coords);
  static Element vector(std::initializer_list<double> coords);
  static Element matrix(std::size_t n, std::vector<double> row_major);
  static Element matrix(const Matrix& m);
  static Element diagonal(std::span<const double> diag);
  static Element identity(std::size_t n);
  static Element zero(const Shape& shape);
  /// Element of the given shape from stored coordinates (row-major for
  /// matrices, which must be exactly symmetric).
  static Element from_data(const Shape& shape, std::vector<double> data);

  Kind kind() const { return shape_.kind; }
  std::size_t dim() const { return shape_.dim; }
  const Shape& shape() const { return shape_; }
  std::span<const double> data() const { return data_; }

  /// Scalar value; throws DomainError for non-scalar kinds.
  double value() const;
  double operator[](std::size_t i) const { return data_[i]; }
  double at(std::size_t row, std::size_t col) const { return data_[row * shape_.dim + col]; }
  Matrix to_matrix() const;

  bool is_zero() const;

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(double factor);

  friend Element operator+(Element lhs, const Element& rhs) { return lhs += rhs; }
  friend Element operator-(Element lhs, const Element& rhs) { return lhs -= rhs; }
  friend Element operator*(Element lhs, double factor) { return lhs *= factor; }
  friend Element operator*(double factor, Element rhs) { return rhs *= factor; }
  friend Element operator-(Element e) { return e *= -1.0; }

  /// Exact coordinatewise equality.
  friend bool operator==(const Element&, const Element&) = default;

 private:
  Element(Shape shape, std::vector<double> data) : shape_(shape), data_(std::move(data)) {}

  void require_same_shape(const Element& other, std::string_view op) const;

  Shape shape_{};
  std::vector<double> data_{0.0};
};

/// An ordered list x_1..x_n of elements sharing one shape, n >= 1.
class FiniteSequence {
 public:
  FiniteSequence() = default;
  explicit FiniteSequence(std::vector<Element> elements);

  static FiniteSequence scalars(std::span<const double> values);
  static FiniteSequence scalars(std::initializer_list<double> values);

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const Shape& shape() const;

  /// 0-based access; the mathematical index k corresponds to `[k - 1]`.
  const Element& operator[](std::size_t i) const { return elements_[i]; }
  const Element& front() const { return elements_.front(); }
  const Element& back() const { return elements_.back(); }

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  const std::vector<Element>& elements() const { return elements_; }

  /// Left-to-right prefix sums S_1..S_n.
  FiniteSequence prefix_sums() const;

  /// Copy with `count` zero elements inserted in front.
  FiniteSequence zero_padded(std::size_t count) const;

 private:
  std::vector<Element> elements_;
};

/// Normalized coordinate residual between two elements of the same shape:
/// max_i |a_i - b_i| / max(|a_i|, |b_i|, abs_floor / rel_tol). A value
/// <= rel_tol means every coordinate agrees within relative rel_tol or
/// absolute abs_floor.
double normalized_residual(const Element& a, const Element& b, double rel_tol, double abs_floor);

bool approx_equal(const Element& a, const Element& b, double rel_tol, double abs_floor);

}  // namespace abel
