// Summation-by-parts identities, positive-map facts and the finite bounds.

#include <algorithm>

#include "abel/core_sums.hpp"
#include "abel/ordered.hpp"
#include "common.hpp"

namespace abel::suites {

namespace {

struct PairInstance {
  BilinearMap phi;
  FiniteSequence xs;
  FiniteSequence ys;
};

Json pair_json(const BilinearMap& phi, const FiniteSequence& xs, const FiniteSequence& ys) {
  Json j;
  j["phi"] = std::string(phi.name());
  j["xs"] = to_json(xs);
  j["ys"] = to_json(ys);
  return j;
}

PairInstance pair_from(const Json& j) {
  return {BilinearMap(parse_bilinear_variant(j.at("phi").get<std::string>())), sequence_from_json(j.at("xs")),
          sequence_from_json(j.at("ys"))};
}

FiniteSequence random_sequence(Rng& rng, const Shape& shape, std::size_t n) {
  std::vector<Element> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(random_element(rng, shape, 1.0));
  return FiniteSequence(std::move(out));
}

Json random_pair(Rng& rng, BilinearVariant v, const SizeCaps& caps) {
  const BilinearMap phi(v);
  const ShapePair s = draw_shapes(rng, v, caps);
  const std::size_t n = draw_size(rng, 1, std::max<std::size_t>(caps.n, 1));
  return pair_json(phi, random_sequence(rng, s.x, n), random_sequence(rng, s.y, n));
}

// Worst normalized residual of every rewriting against the direct sum.
Outcome check_transforms(const Json& j, double tol) {
  const PairInstance in = pair_from(j);
  const Element direct = direct_sum(in.phi, in.xs, in.ys);
  double worst = 0.0;
  std::string where;
  auto consider = [&](const Element& v, const std::string& label) {
    const double r = normalized_residual(direct, v, tol, kIdentityAbsTol);
    if (r > worst) {
      worst = r;
      where = label;
    }
  };
  for (AbelVariant v : kAllAbelVariants) consider(abel_transform(in.phi, in.xs, in.ys, v).value, std::string(to_string(v)));
  for (std::size_t k = 1; k <= in.xs.size(); ++k) {
    consider(abel_mixed(in.phi, in.xs, in.ys, k).value, "mixed k=" + std::to_string(k));
  }
  return residual_outcome(worst, tol, where.empty() ? "exact" : "worst at " + where);
}

Outcome check_padding(const Json& j, double tol) {
  const PairInstance in = pair_from(j);
  const std::size_t pad = j.at("pad").get<std::size_t>();
  const FiniteSequence px = in.xs.zero_padded(pad);
  const FiniteSequence py = in.ys.zero_padded(pad);
  double worst = 0.0;
  for (AbelVariant v : kAllAbelVariants) {
    const Element a = abel_transform(in.phi, in.xs, in.ys, v).value;
    const Element b = abel_transform(in.phi, px, py, v).value;
    worst = std::max(worst, normalized_residual(a, b, tol, kIdentityAbsTol));
  }
  return residual_outcome(worst, tol);
}

// 0 <= x1 <= x2 and 0 <= y1 <= y2 imply Phi(x1, y1) <= Phi(x2, y2).
Json random_monotone_pair(Rng& rng, const SizeCaps& caps) {
  const BilinearVariant v = draw_variant(rng);
  const ShapePair s = draw_shapes(rng, v, caps);
  const FiniteSequence xs = instances::increasing_chain(rng, s.x, 2, true);
  const FiniteSequence ys = instances::increasing_chain(rng, s.y, 2, true);
  return pair_json(BilinearMap(v), xs, ys);
}

Outcome check_monotone(const Json& j, double tol) {
  const PairInstance in = pair_from(j);
  const Element lo = in.phi(in.xs[0], in.ys[0]);
  const Element hi = in.phi(in.xs[1], in.ys[1]);
  const double scale = 1.0 + norm(hi);
  const double floor_lo = order_floor(lo);
  const double gap = order_floor(hi - lo);
  const double slack = std::min(floor_lo, gap) / scale;
  return make_outcome(slack >= -tol, slack, "min(floor(Phi(x1,y1)), floor(Phi(x2,y2) - Phi(x1,y1)))");
}

Json random_bilinearity(Rng& rng, const SizeCaps& caps) {
  const BilinearVariant v = draw_variant(rng);
  const ShapePair s = draw_shapes(rng, v, caps);
  Json j;
  j["phi"] = std::string(to_string(v));
  j["alpha"] = rng.uniform(-2.0, 2.0);
  j["x"] = to_json(random_element(rng, s.x));
  j["x2"] = to_json(random_element(rng, s.x));
  j["y"] = to_json(random_element(rng, s.y));
  j["y2"] = to_json(random_element(rng, s.y));
  return j;
}

Outcome check_bilinearity(const Json& j, double tol) {
  const BilinearMap phi(parse_bilinear_variant(j.at("phi").get<std::string>()));
  const double a = j.at("alpha").get<double>();
  const Element x = element_from_json(j.at("x"));
  const Element x2 = element_from_json(j.at("x2"));
  const Element y = element_from_json(j.at("y"));
  const Element y2 = element_from_json(j.at("y2"));
  const double left = normalized_residual(phi(x * a + x2, y), phi(x, y) * a + phi(x2, y), tol, 1e-14);
  const double right = normalized_residual(phi(x, y * a + y2), phi(x, y) * a + phi(x, y2), tol, 1e-14);
  return residual_outcome(std::max(left, right), tol);
}

// Empirical ||Phi(x, y)|| over unit-norm pairs against the analytic constant.
Outcome check_boundedness(const Json& j, double tol) {
  const BilinearVariant v = parse_bilinear_variant(j.at("phi").get<std::string>());
  const BilinearMap phi(v);
  const auto pairs = j.at("pairs").get<std::uint64_t>();
  Rng rng(j.at("seed").get<std::uint64_t>());
  SizeCaps caps;
  caps.dim = j.at("dim").get<std::size_t>();
  caps.matrix_dim = j.at("matrix_dim").get<std::size_t>();
  double worst_ratio = 0.0;
  double empirical = 0.0;
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const ShapePair s = draw_shapes(rng, v, caps);
    Element x = random_element(rng, s.x);
    Element y = random_element(rng, s.y);
    const double nx = norm(x);
    const double ny = norm(y);
    if (nx == 0.0 || ny == 0.0) continue;
    x *= 1.0 / nx;
    y *= 1.0 / ny;
    const double value = norm(phi(x, y));
    empirical = std::max(empirical, value);
    worst_ratio = std::max(worst_ratio, value / phi.norm_bound(s.x, s.y));
  }
  Outcome o = make_outcome(worst_ratio <= 1.0 + tol, 1.0 + tol - worst_ratio,
                           "empirical sup " + fmt(empirical) + ", worst ratio to analytic constant " + fmt(worst_ratio));
  return o;
}

// Abel's inequality with a_1 >= ... >= a_n >= 0.
Json random_abel_inequality(Rng& rng, const SizeCaps& caps) {
  const std::size_t n = draw_size(rng, 1, std::max<std::size_t>(caps.n, 1));
  const FiniteSequence a = instances::decreasing_chain(rng, Shape::scalar(), n, true);
  std::vector<double> av;
  std::vector<double> bv;
  for (const Element& e : a) av.push_back(e.value());
  for (std::size_t k = 0; k < n; ++k) bv.push_back(rng.uniform(-1.0, 1.0));
  Json j;
  j["a"] = av;
  j["b"] = bv;
  return j;
}

Outcome check_abel_inequality(const Json& j, double tol) {
  const auto a = j.at("a").get<std::vector<double>>();
  const auto b = j.at("b").get<std::vector<double>>();
  const AbelBound r = abel_inequality_bound(a, b);
  const double slack = r.bound - r.lhs;
  return make_outcome(slack >= -tol, slack, "lhs " + fmt(r.lhs) + ", bound " + fmt(r.bound));
}

// Sandwich with m and M read off the realized prefix sums.
Json random_sandwich(Rng& rng, const SizeCaps& caps) {
  const BilinearVariant v = draw_variant(rng);
  const BilinearMap phi(v);
  const ShapePair s = draw_shapes(rng, v, caps);
  const std::size_t n = draw_size(rng, 1, std::max<std::size_t>(caps.n, 1));
  std::vector<Element> xv;
  for (std::size_t k = 0; k < n; ++k) xv.push_back(instances::dyadic_element(rng, s.x, -1.0, 1.0));
  const FiniteSequence xs(std::move(xv));
  const FiniteSequence ys = instances::decreasing_chain(rng, s.y, n, true);
  const FiniteSequence px = xs.prefix_sums();

  Element m = px[0];
  Element big_m = px[0];
  if (s.x.kind == Kind::symmetric_matrix) {
    double lo = INFINITY;
    double hi = -INFINITY;
    for (const Element& p : px) {
      lo = std::min(lo, order_floor(p));
      hi = std::max(hi, -order_floor(-p));
    }
    m = Element::identity(s.x.dim) * lo;
    big_m = Element::identity(s.x.dim) * hi;
  } else {
    std::vector<double> lo(px[0].data().begin(), px[0].data().end());
    std::vector<double> hi = lo;
    for (const Element& p : px) {
      for (std::size_t i = 0; i < lo.size(); ++i) {
        lo[i] = std::min(lo[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    }
    m = Element::from_data(s.x, lo);
    big_m = Element::from_data(s.x, hi);
  }
  Json j = pair_json(phi, xs, ys);
  j["m"] = to_json(m);
  j["M"] = to_json(big_m);
  return j;
}

Outcome check_sandwich(const Json& j, double tol) {
  const PairInstance in = pair_from(j);
  const SandwichResult r =
      bilinear_bound_check(in.phi, in.xs, in.ys, element_from_json(j.at("m")), element_from_json(j.at("M")));
  return make_outcome(r.worst_slack >= -tol, r.worst_slack);
}

Outcome check_abel_examples(const Json&, double tol) {
  // Hand-derived values for a = (3, 2, 1), b = (1, 2, 3).
  const BilinearMap phi(BilinearVariant::scalar_multiply);
  const FiniteSequence a = FiniteSequence::scalars({3, 2, 1});
  const FiniteSequence b = FiniteSequence::scalars({1, 2, 3});
  double worst = 0.0;
  auto diff = [&](double got, double want) { worst = std::max(worst, std::abs(got - want)); };
  diff(direct_sum(phi, a, b).value(), 10);
  const TransformResult fwd = abel_transform(phi, a, b, AbelVariant::forward);
  const TransformResult bwd = abel_transform(phi, a, b, AbelVariant::backward);
  const TransformResult mix = abel_mixed(phi, a, b, 1);
  const double want_fwd[] = {1, 3, 6};
  const double want_bwd[] = {-5, -3, 18};
  const double want_mix[] = {0, 3, 10, -3};
  for (std::size_t i = 0; i < 3; ++i) diff(fwd.summands[i].value(), want_fwd[i]);
  for (std::size_t i = 0; i < 3; ++i) diff(bwd.summands[i].value(), want_bwd[i]);
  for (std::size_t i = 0; i < 4; ++i) diff(mix.summands[i].value(), want_mix[i]);
  const AbelBound bound = abel_inequality_bound(std::vector<double>{2, 1, 0.5}, std::vector<double>{1, -2, 3});
  diff(bound.lhs, 1.5);
  diff(bound.bound, 4);
  return residual_outcome(worst, tol, "max |computed - hand value|");
}

}  // namespace

void add_identity_properties(std::vector<Property>& out) {
  for (BilinearVariant v : kAllBilinearVariants) {
    out.push_back({"identities", "transforms_match_direct_sum/" + std::string(to_string(v)), kIdentityRelTol, false,
                   [v](Rng& rng, const SizeCaps& caps) { return random_pair(rng, v, caps); }, check_transforms});
  }
  out.push_back({"identities", "zero_padding_invariance", kIdentityRelTol, false,
                 [](Rng& rng, const SizeCaps& caps) {
                   SizeCaps c = caps;
                   c.n = std::max<std::size_t>(1, std::min<std::size_t>(caps.n, 20));
                   Json j = random_pair(rng, draw_variant(rng), c);
                   j["pad"] = draw_size(rng, 1, 5);
                   return j;
                 },
                 check_padding});
  out.push_back({"identities", "positive_map_monotonicity", 1e-12, false, random_monotone_pair, check_monotone});
  out.push_back({"identities", "bilinearity", 1e-12, false, random_bilinearity, check_bilinearity});
  for (BilinearVariant v : kAllBilinearVariants) {
    out.push_back({"identities", "boundedness/" + std::string(to_string(v)), 1e-12, true,
                   [v](Rng& rng, const SizeCaps& caps) {
                     Json j;
                     j["phi"] = std::string(to_string(v));
                     j["pairs"] = 10000;
                     j["seed"] = rng.bits();
                     j["dim"] = std::max<std::size_t>(caps.dim, 1);
                     j["matrix_dim"] = std::max<std::size_t>(caps.matrix_dim, 1);
                     return j;
                   },
                   check_boundedness});
  }
  out.push_back({"identities", "hand_examples", 0.0, true, [](Rng&, const SizeCaps&) { return Json::object(); },
                 check_abel_examples});
}

void add_bound_properties(std::vector<Property>& out) {
  out.push_back({"abel-bounds", "abel_inequality", 1e-12, false, random_abel_inequality, check_abel_inequality});
  out.push_back({"abel-bounds", "bilinear_sandwich", 1e-10, false, random_sandwich, check_sandwich});
}

}  // namespace abel::suites
