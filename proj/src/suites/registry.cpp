#include <algorithm>

#include "common.hpp"

namespace abel {

namespace suites {

ShapePair draw_shapes(Rng& rng, BilinearVariant v, const SizeCaps& caps) {
  const std::size_t dim = std::max<std::size_t>(caps.dim, 1);
  const std::size_t mdim = std::max<std::size_t>(caps.matrix_dim, 1);
  switch (v) {
    case BilinearVariant::scalar_multiply:
      return {Shape::scalar(), Shape::scalar()};
    case BilinearVariant::pairing_scalar_vector:
      if (rng.bernoulli(0.5)) return {Shape::scalar(), Shape::vector(draw_size(rng, 1, dim))};
      return {Shape::scalar(), Shape::matrix(draw_size(rng, 1, mdim))};
    case BilinearVariant::dot_duality:
    case BilinearVariant::hadamard: {
      const std::size_t d = draw_size(rng, 1, dim);
      return {Shape::vector(d), Shape::vector(d)};
    }
    case BilinearVariant::discrete_convolution:
      return {Shape::vector(draw_size(rng, 1, dim)), Shape::vector(draw_size(rng, 1, dim))};
    case BilinearVariant::trace_pair: {
      const std::size_t d = draw_size(rng, 1, mdim);
      return {Shape::matrix(d), Shape::matrix(d)};
    }
  }
  return {Shape::scalar(), Shape::scalar()};
}

BilinearVariant draw_variant(Rng& rng, bool same_kind) {
  if (same_kind) {
    static constexpr BilinearVariant kSame[] = {BilinearVariant::scalar_multiply, BilinearVariant::dot_duality,
                                                BilinearVariant::hadamard, BilinearVariant::discrete_convolution,
                                                BilinearVariant::trace_pair};
    return kSame[rng.uniform_int(0, 4)];
  }
  return kAllBilinearVariants[static_cast<std::size_t>(rng.uniform_int(0, 5))];
}

}  // namespace suites

const std::vector<Property>& all_properties() {
  static const std::vector<Property> props = [] {
    std::vector<Property> out;
    suites::add_identity_properties(out);
    suites::add_bound_properties(out);
    suites::add_series_properties(out);
    suites::add_inequality_properties(out);
    suites::add_trace_properties(out);
    return out;
  }();
  return props;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const Property& p : all_properties()) {
    if (std::find(names.begin(), names.end(), p.suite) == names.end()) names.push_back(p.suite);
  }
  names.push_back("all");
  return names;
}

const Property& find_property(const std::string& suite, const std::string& name) {
  for (const Property& p : all_properties()) {
    if (p.suite == suite && p.name == name) return p;
  }
  throw UsageError("unknown property '" + suite + "/" + name + "'");
}

}  // namespace abel
