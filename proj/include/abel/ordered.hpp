#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "abel/element.hpp"

namespace abel {

/// Default slack for Loewner comparisons, relative to 1 + ||y - x||_F.
inline constexpr double kMatrixOrderTol = 1e-10;

/// Tolerance used when a theorem hypothesis is checked in the order of a given
/// kind: exact for scalars and vectors, kMatrixOrderTol for matrices.
double hypothesis_tol(Kind kind);

enum class Relation { less_equal, greater_equal, equal, incomparable };

std::string_view to_string(Relation r);

/// Outcome of comparing x with y. `witness` is the coordinate index (or the
/// position of the eigenvalue of y - x in decreasing order) that decides the
/// verdict and `witness_value` the corresponding entry of y - x.
struct PartialOrderResult {
  Relation relation = Relation::equal;
  std::size_t witness = 0;
  double witness_value = 0.0;

  bool le() const { return relation == Relation::less_equal || relation == Relation::equal; }
  bool ge() const { return relation == Relation::greater_equal || relation == Relation::equal; }
};

/// Compare x and y in the order of their kind. Scalars and vectors are
/// compared coordinatewise with slack `tol`; matrices by the spectrum of
/// y - x with slack tol * (1 + ||y - x||_F).
PartialOrderResult compare(const Element& x, const Element& y, double tol = 0.0);

inline bool less_equal(const Element& x, const Element& y, double tol = 0.0) { return compare(x, y, tol).le(); }

/// Smallest coordinate (scalar/vector) or smallest eigenvalue (matrix).
double order_floor(const Element& e);

struct LatticeParts {
  Element plus;
  Element minus;
  Element abs;
};

/// z+ = max(z, 0), z- = max(-z, 0), |z| = z+ + z-, coordinatewise. Matrices
/// are rejected with UnsupportedError: the Loewner order is not a lattice.
LatticeParts pos_neg_parts(const Element& x);

/// A strong order unit u > 0.
class OrderUnit {
 public:
  explicit OrderUnit(Element unit);

  /// Canonical unit for a shape: 1, the all-ones vector, or the identity.
  static OrderUnit canonical(const Shape& shape);

  const Element& unit() const { return unit_; }

 private:
  Element unit_;
  Matrix inv_sqrt_;  // U^{-1/2} for matrix units
  friend double order_unit_norm(const Element& x, const OrderUnit& u);
};

/// inf { lambda > 0 : -lambda u <= x <= lambda u }.
double order_unit_norm(const Element& x, const OrderUnit& u);

/// Order-unit norm with the canonical unit: |x|, max_i |x_i|, or the spectral
/// radius.
double norm(const Element& x);

enum class Direction { decreasing, increasing };

std::string_view to_string(Direction d);

struct ChainVerdict {
  bool monotone = true;
  /// Only meaningful when nonnegativity was requested.
  bool nonneg_tail = true;
  /// 1-based index k of the first failing step (x_k vs x_{k+1}); for a failed
  /// tail check, the index of the tail element.
  std::optional<std::size_t> violation;
  PartialOrderResult detail;
  std::string reason;

  bool ok() const { return monotone && nonneg_tail; }
};

/// Checks x_k >= x_{k+1} (or <=) for every k; with `require_nonneg_tail`, also
/// that the last element of the chain in the given direction is >= 0, i.e.
/// x_n >= 0 for decreasing and x_1 >= 0 for increasing chains.
ChainVerdict is_monotone_chain(const FiniteSequence& xs, Direction direction, bool require_nonneg_tail,
                               double tol = 0.0);

}  // namespace abel
