#pragma once

#include <array>
#include <string_view>

#include "abel/element.hpp"

namespace abel {

/// The positive bilinear maps available to the transforms:
///   scalar_multiply        R x R -> R,            (a, b) -> ab
///   pairing_scalar_vector  R x E -> E,            (a, x) -> a x   (E vector or matrix)
///   dot_duality            R^N x R^N -> R,        (x, y) -> <x, y>
///   hadamard               R^N x R^N -> R^N,      coordinatewise product
///   discrete_convolution   R^m x R^n -> R^{m+n-1}, (x * y)_k = sum_i x_i y_{k-i}
///   trace_pair             S^N x S^N -> R,        (A, B) -> Tr(AB)
enum class BilinearVariant {
  scalar_multiply,
  pairing_scalar_vector,
  dot_duality,
  hadamard,
  discrete_convolution,
  trace_pair,
};

inline constexpr std::array<BilinearVariant, 6> kAllBilinearVariants = {
    BilinearVariant::scalar_multiply, BilinearVariant::pairing_scalar_vector, BilinearVariant::dot_duality,
    BilinearVariant::hadamard,        BilinearVariant::discrete_convolution,  BilinearVariant::trace_pair,
};

std::string_view to_string(BilinearVariant v);
BilinearVariant parse_bilinear_variant(std::string_view name);

class BilinearMap {
 public:
  explicit BilinearMap(BilinearVariant variant) : variant_(variant) {}

  BilinearVariant variant() const { return variant_; }
  std::string_view name() const { return to_string(variant_); }

  bool accepts(const Shape& x, const Shape& y) const;

  /// Shape of Phi(x, y); throws DomainError when the input shapes are not
  /// accepted.
  Shape output_shape(const Shape& x, const Shape& y) const;

  Element apply(const Element& x, const Element& y) const;
  Element operator()(const Element& x, const Element& y) const { return apply(x, y); }

  /// An analytic constant C with ||Phi(x, y)|| <= C ||x|| ||y|| in the
  /// canonical order-unit norms of the input and output shapes.
  double norm_bound(const Shape& x, const Shape& y) const;

  friend bool operator==(const BilinearMap&, const BilinearMap&) = default;

 private:
  BilinearVariant variant_;
};

/// Phi(x, y); throws DomainError on kind or dimension mismatch.
Element bilinear_apply(const BilinearMap& phi, const Element& x, const Element& y);

}  // namespace abel
