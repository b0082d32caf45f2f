#include "abel/bilinear.hpp"

#include <algorithm>

#include "abel/error.hpp"

namespace abel {

std::string_view to_string(BilinearVariant v) {
  switch (v) {
    case BilinearVariant::scalar_multiply:
      return "scalar_multiply";
    case BilinearVariant::pairing_scalar_vector:
      return "pairing_scalar_vector";
    case BilinearVariant::dot_duality:
      return "dot_duality";
    case BilinearVariant::hadamard:
      return "hadamard";
    case BilinearVariant::discrete_convolution:
      return "discrete_convolution";
    case BilinearVariant::trace_pair:
      return "trace_pair";
  }
  return "unknown";
}

BilinearVariant parse_bilinear_variant(std::string_view name) {
  for (BilinearVariant v : kAllBilinearVariants) {
    if (to_string(v) == name) return v;
  }
  throw DomainError("unknown bilinear map '" + std::string(name) + "'");
}

bool BilinearMap::accepts(const Shape& x, const Shape& y) const {
  switch (variant_) {
    case BilinearVariant::scalar_multiply:
      return x.kind == Kind::scalar && y.kind == Kind::scalar;
    case BilinearVariant::pairing_scalar_vector:
      return x.kind == Kind::scalar && y.kind != Kind::scalar;
    case BilinearVariant::dot_duality:
    case BilinearVariant::hadamard:
      return x.kind == Kind::vector && y.kind == Kind::vector && x.dim == y.dim;
    case BilinearVariant::discrete_convolution:
      return x.kind == Kind::vector && y.kind == Kind::vector;
    case BilinearVariant::trace_pair:
      return x.kind == Kind::symmetric_matrix && y.kind == Kind::symmetric_matrix && x.dim == y.dim;
  }
  return false;
}

Shape BilinearMap::output_shape(const Shape& x, const Shape& y) const {
  if (!accepts(x, y)) {
    throw DomainError(std::string(name()) + " does not accept " + describe(x) + " x " + describe(y));
  }
  switch (variant_) {
    case BilinearVariant::scalar_multiply:
    case BilinearVariant::dot_duality:
    case BilinearVariant::trace_pair:
      return Shape::scalar();
    case BilinearVariant::pairing_scalar_vector:
      return y;
    case BilinearVariant::hadamard:
      return x;
    case BilinearVariant::discrete_convolution:
      return Shape::vector(x.dim + y.dim - 1);
  }
  throw DomainError("unknown bilinear map");
}

Element BilinearMap::apply(const Element& x, const Element& y) const {
  const Shape out = output_shape(x.shape(), y.shape());
  const auto xd = x.data();
  const auto yd = y.data();
  switch (variant_) {
    case BilinearVariant::scalar_multiply:
      return Element::scalar(xd[0] * yd[0]);
    case BilinearVariant::pairing_scalar_vector:
      return y * xd[0];
    case BilinearVariant::dot_duality: {
      double sum = 0.0;
      for (std::size_t i = 0; i < xd.size(); ++i) sum += xd[i] * yd[i];
      return Element::scalar(sum);
    }
    case BilinearVariant::hadamard: {
      std::vector<double> prod(xd.size());
      for (std::size_t i = 0; i < xd.size(); ++i) prod[i] = xd[i] * yd[i];
      return Element::vector(std::move(prod));
    }
    case BilinearVariant::discrete_convolution: {
      std::vector<double> conv(out.dim, 0.0);
      for (std::size_t i = 0; i < xd.size(); ++i)
        for (std::size_t j = 0; j < yd.size(); ++j) conv[i + j] += xd[i] * yd[j];
      return Element::vector(std::move(conv));
    }
    case BilinearVariant::trace_pair: {
      // Tr(AB) = sum_ij a_ij b_ji; both operands are symmetric.
      double sum = 0.0;
      const std::size_t n = x.dim();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sum += x.at(i, j) * y.at(j, i);
      return Element::scalar(sum);
    }
  }
  throw DomainError("unknown bilinear map");
}

double BilinearMap::norm_bound(const Shape& x, const Shape& y) const {
  output_shape(x, y);
  switch (variant_) {
    case BilinearVariant::scalar_multiply:
    case BilinearVariant::pairing_scalar_vector:
    case BilinearVariant::hadamard:
      return 1.0;
    case BilinearVariant::dot_duality:
      return static_cast<double>(x.dim);
    case BilinearVariant::discrete_convolution:
      return static_cast<double>(std::min(x.dim, y.dim));
    case BilinearVariant::trace_pair:
      // |Tr(AB)| <= sum_i |lambda_i(AB)| <= N ||A|| ||B||.
      return static_cast<double>(x.dim);
  }
  return 0.0;
}

Element bilinear_apply(const BilinearMap& phi, const Element& x, const Element& y) { return phi.apply(x, y); }

}  // namespace abel
