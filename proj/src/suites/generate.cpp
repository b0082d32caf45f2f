#include "abel/spectral.hpp"
#include "common.hpp"

namespace abel {

Json generate_instance(const std::string& kind, std::uint64_t seed, std::size_t n, std::size_t dim) {
  Rng rng(derive_seed(seed, 0x67656e));
  Json j;
  j["kind"] = kind;
  j["seed"] = seed;
  const auto need_length = [&] {
    if (n == 0) throw UsageError(kind + " needs n >= 1");
  };
  if (kind == "steffensen") {
    need_length();
    const SteffensenWeights w = steffensen_weights(instances::steffensen_weights(rng, n));
    j["weights"] = w.w;
    j["partials"] = w.partials;
  } else if (kind == "psd_chain") {
    need_length();
    if (dim == 0) throw UsageError("psd_chain needs dim >= 1");
    const instances::PsdChainInstance c = instances::psd_chain(rng, dim, n);
    Json as = Json::array();
    Json bs = Json::array();
    for (const Matrix& m : c.as) as.push_back(to_json(m));
    for (const Matrix& m : c.bs) bs.push_back(to_json(m));
    j["as"] = std::move(as);
    j["bs"] = std::move(bs);
  } else if (kind == "pwl_convex") {
    const PwlConvexFunction f = instances::pwl_convex(rng, n);
    j["function"] = to_json(f);
    j["hlp"] = to_json(hlp_decompose(f));
  } else if (kind == "sequence") {
    need_length();
    const Shape shape = dim <= 1 ? Shape::scalar() : Shape::vector(dim);
    j["direction"] = "decreasing";
    j["terms"] = to_json(instances::decreasing_chain(rng, shape, n, true));
  } else {
    throw UsageError("unknown instance kind '" + kind + "' (steffensen, psd_chain, pwl_convex, sequence)");
  }
  return j;
}

}  // namespace abel
