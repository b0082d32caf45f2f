// Positive sums, Jensen-Steffensen, HLP decompositions and Tomić-Weyl.

#include <algorithm>
#include <cmath>

#include "abel/error.hpp"
#include "abel/majorize.hpp"
#include "abel/ordered.hpp"
#include "common.hpp"

namespace abel::suites {

namespace {

Json positive_sum_instance(Rng& rng, const SizeCaps& caps, PositiveSumCondition cond) {
  const BilinearVariant v = draw_variant(rng);
  const ShapePair s = draw_shapes(rng, v, caps);
  const std::size_t n = draw_size(rng, 1, std::max<std::size_t>(caps.n, 1));
  const bool first = cond == PositiveSumCondition::decreasing_prefix;
  const FiniteSequence xs = first ? instances::decreasing_chain(rng, s.x, n, true)
                                  : instances::increasing_chain(rng, s.x, n, true);
  const FiniteSequence ys = first ? instances::nonneg_prefix_sequence(rng, s.y, n)
                                  : instances::nonneg_suffix_sequence(rng, s.y, n);
  Json j;
  j["phi"] = std::string(to_string(v));
  j["condition"] = first ? "i" : "ii";
  j["xs"] = to_json(xs);
  j["ys"] = to_json(ys);
  return j;
}

Outcome check_positive_sum(const Json& j, double tol) {
  const BilinearMap phi(parse_bilinear_variant(j.at("phi").get<std::string>()));
  const auto cond = j.at("condition").get<std::string>() == "i" ? PositiveSumCondition::decreasing_prefix
                                                                : PositiveSumCondition::increasing_suffix;
  const PositiveSumResult r =
      positive_sum_check(phi, sequence_from_json(j.at("xs")), sequence_from_json(j.at("ys")), cond);
  const double slack = r.slack / (1.0 + norm(r.value));
  return make_outcome(slack >= -tol, slack);
}

Json random_abs_split(Rng& rng, const SizeCaps& caps) {
  const std::size_t n = draw_size(rng, 1, std::max<std::size_t>(caps.n, 1));
  const Direction d = rng.bernoulli(0.5) ? Direction::increasing : Direction::decreasing;
  Json j;
  j["xs"] = instances::monotone_points(rng, n, -2.0, 2.0, d);
  j["w"] = instances::steffensen_weights(rng, n);
  return j;
}

Outcome check_abs_split(const Json& j, double tol) {
  const auto xs = j.at("xs").get<std::vector<double>>();
  const SteffensenWeights w = steffensen_weights(j.at("w").get<std::vector<double>>());
  const AbsDecomposition d = js_abs_decomposition(xs, w);
  const double slack = std::min({d.plus_sum, d.minus_sum, d.rhs - d.lhs});
  return make_outcome(d.parts_nonneg && slack >= -tol, slack,
                      "sum w x+ = " + fmt(d.plus_sum) + ", sum w x- = " + fmt(d.minus_sum));
}

// Registry handles for the scalar Jensen-Steffensen property.
Json draw_convex_handle(Rng& rng) {
  switch (rng.uniform_int(0, 4)) {
    case 0:
      return function_to_json("abs", {});
    case 1:
      return function_to_json("square", {});
    case 2:
      return function_to_json("exp", {});
    case 3:
      return function_to_json("hinge", {{"c", rng.dyadic(-2.0, 2.0)}});
    default: {
      const PwlConvexFunction f = instances::pwl_convex(rng, draw_size(rng, 0, 8));
      Json j;
      j["name"] = "hlp";
      j["hlp"] = to_json(hlp_decompose(f));
      return j;
    }
  }
}

Json random_js_scalar(Rng& rng, const SizeCaps& caps) {
  const std::size_t n = draw_size(rng, 1, std::max<std::size_t>(caps.n, 1));
  const Direction d = rng.bernoulli(0.5) ? Direction::increasing : Direction::decreasing;
  Json j;
  j["f"] = draw_convex_handle(rng);
  j["xs"] = instances::monotone_points(rng, n, -2.0, 2.0, d);
  j["w"] = instances::steffensen_weights(rng, n);
  return j;
}

Outcome check_js_scalar(const Json& j, double tol) {
  const ScalarFunction f = function_from_json(j.at("f"));
  const auto xs = j.at("xs").get<std::vector<double>>();
  const SteffensenWeights w = steffensen_weights(j.at("w").get<std::vector<double>>());
  const JensenResult r = jensen_steffensen_check(f, xs, w);
  return make_outcome(r.slack >= -tol, r.slack, f.name() + ": lhs " + fmt(r.lhs.value()) + ", rhs " + fmt(r.rhs.value()));
}

Json random_js_affine(Rng& rng, const SizeCaps& caps) {
  const std::size_t n = draw_size(rng, 1, std::max<std::size_t>(caps.n, 1));
  const Direction d = rng.bernoulli(0.5) ? Direction::increasing : Direction::decreasing;
  Json j;
  j["f"] = function_to_json("affine", {{"a", rng.dyadic(-2.0, 2.0)}, {"b", rng.dyadic(-2.0, 2.0)}});
  j["xs"] = instances::monotone_points(rng, n, -2.0, 2.0, d);
  j["w"] = instances::steffensen_weights(rng, n, rng.bernoulli(0.5));
  return j;
}

Outcome check_js_affine(const Json& j, double tol) {
  const ScalarFunction f = function_from_json(j.at("f"));
  const auto xs = j.at("xs").get<std::vector<double>>();
  const SteffensenWeights w = steffensen_weights(j.at("w").get<std::vector<double>>());
  const JensenResult r = jensen_steffensen_check(f, xs, w);
  return make_outcome(std::abs(r.slack) <= tol, tol - std::abs(r.slack), "equality case, slack " + fmt(r.slack));
}

Json random_js_vector(Rng& rng, const SizeCaps& caps) {
  const std::size_t n = draw_size(rng, 1, std::max<std::size_t>(caps.n, 1));
  const std::size_t dim = draw_size(rng, 1, std::max<std::size_t>(caps.dim, 1));
  const Shape shape = Shape::vector(dim);
  const FiniteSequence xs = rng.bernoulli(0.5) ? instances::increasing_chain(rng, shape, n, false, 0.25)
                                               : instances::decreasing_chain(rng, shape, n, false, 0.25);
  Json linear = Json::array();
  for (std::size_t i = 0; i < dim; ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < dim; ++c) row.push_back(rng.dyadic(-1.0, 1.0));
    linear.push_back(std::move(row));
  }
  Json offset = Json::array();
  for (std::size_t i = 0; i < dim; ++i) offset.push_back(rng.dyadic(-1.0, 1.0));
  Json terms = Json::array();
  const std::size_t m = draw_size(rng, 0, 6);
  for (std::size_t k = 0; k < m; ++k) {
    Json center = Json::array();
    for (std::size_t i = 0; i < dim; ++i) center.push_back(rng.dyadic(-3.0, 3.0));
    terms.push_back({{"coefficient", rng.dyadic(0.0, 2.0)}, {"center", std::move(center)}});
  }
  Json j;
  j["f"] = {{"linear", std::move(linear)}, {"offset", std::move(offset)}, {"terms", std::move(terms)}};
  j["xs"] = to_json(xs);
  j["w"] = instances::steffensen_weights(rng, n);
  return j;
}

LatticeConvexFunction lattice_from_json(const Json& j) {
  const Json& lin = j.at("linear");
  const auto d = static_cast<Eigen::Index>(lin.size());
  Matrix l(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index c = 0; c < d; ++c) l(i, c) = lin.at(std::size_t(i)).at(std::size_t(c)).get<double>();
  std::vector<LatticeConvexFunction::Term> terms;
  for (const Json& t : j.at("terms")) {
    terms.push_back({t.at("coefficient").get<double>(), t.at("center").get<std::vector<double>>()});
  }
  return LatticeConvexFunction(std::move(l), j.at("offset").get<std::vector<double>>(), std::move(terms));
}

Outcome check_js_vector(const Json& j, double tol) {
  const LatticeConvexFunction f = lattice_from_json(j.at("f"));
  const SteffensenWeights w = steffensen_weights(j.at("w").get<std::vector<double>>());
  const JensenResult r = jensen_steffensen_check(f, sequence_from_json(j.at("xs")), w);
  return make_outcome(r.slack >= -tol, r.slack);
}

Outcome check_js_examples(const Json&, double tol) {
  double worst = 0.0;
  const SteffensenWeights w1 = steffensen_weights(std::vector<double>{0.5, -0.25, 0.75});
  const JensenResult sq = jensen_steffensen_check(make_function("square"), std::vector<double>{0, 1, 2}, w1);
  worst = std::max({worst, std::abs(sq.lhs.value() - 1.5625), std::abs(sq.rhs.value() - 2.75)});
  const SteffensenWeights w2 = steffensen_weights(std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
  const JensenResult ab = jensen_steffensen_check(make_function("abs"), std::vector<double>{-1, 0, 1}, w2);
  worst = std::max({worst, std::abs(ab.lhs.value()), std::abs(ab.rhs.value() - 2.0 / 3.0)});
  const bool invalid = !steffensen_validate(std::vector<double>{1.5, -0.5}).valid() &&
                       steffensen_validate(std::vector<double>{1.5, -0.5}).violating_prefix == 1u;
  Outcome o = residual_outcome(worst, tol, "hand values for x^2 and |x|");
  o.pass = o.pass && invalid && sq.holds && ab.holds;
  return o;
}

Json random_pwl(Rng& rng, const SizeCaps&) {
  return to_json(instances::pwl_convex(rng, draw_size(rng, 0, 20)));
}

Outcome check_hlp_round_trip(const Json& j, double tol) {
  const PwlConvexFunction f = pwl_from_json(j);
  const HlpDecomposition d = hlp_decompose(f);
  const ReconstructionError e = hlp_reconstruction_error(f, d, 1000);
  const double allowed = tol * (1.0 + e.max_abs_f);
  bool nonneg = true;
  for (const auto& t : d.terms) nonneg = nonneg && t.coefficient >= 0.0;
  Outcome o = make_outcome(nonneg && e.sup_error <= allowed, allowed - e.sup_error,
                           "sup error " + fmt(e.sup_error) + " for max |f| " + fmt(e.max_abs_f));
  o.residual = e.sup_error / (1.0 + e.max_abs_f);
  o.pass = o.pass && hlp_evaluate(d, f.a()) == f.anchor_value();
  return o;
}

Outcome check_hlp_examples(const Json&, double) {
  struct Case {
    PwlConvexFunction f;
    double alpha;
    double beta;
    std::vector<HlpDecomposition::Term> terms;
  };
  const std::vector<Case> cases = {
      {PwlConvexFunction(-1, 1, {0.0}, {-1, 1}, 1.0), 0.0, 0.0, {{0.0, 1.0}}},
      {PwlConvexFunction(-1, 1, {0.0}, {0, 1}, 0.0), 0.5, 0.0, {{0.0, 0.5}}},
      {PwlConvexFunction(-2, 2, {-1.0, 1.0}, {-1, 0, 1}, 1.0), 0.0, -1.0, {{-1.0, 0.5}, {1.0, 0.5}}},
  };
  bool exact = true;
  for (const Case& c : cases) {
    const HlpDecomposition d = hlp_decompose(c.f);
    exact = exact && d.alpha == c.alpha && d.beta == c.beta && d.terms.size() == c.terms.size();
    for (std::size_t k = 0; exact && k < d.terms.size(); ++k) {
      exact = d.terms[k].center == c.terms[k].center && d.terms[k].coefficient == c.terms[k].coefficient;
    }
  }
  return make_outcome(exact, exact ? 0.0 : -1.0, "|x|, max(0, x), max(|x| - 1, 0)");
}

Json tomic_weyl_instance(Rng& rng, const SizeCaps& caps, TomicWeylSide side) {
  const BilinearVariant v = draw_variant(rng, true);
  ShapePair s = draw_shapes(rng, v, caps);
  // x and u/v occupy the two argument slots in the order of the side.
  const Shape xshape = side == TomicWeylSide::left ? s.x : s.y;
  const Shape ushape = side == TomicWeylSide::left ? s.y : s.x;
  const std::size_t n = draw_size(rng, 1, std::max<std::size_t>(caps.n, 1));
  const FiniteSequence xs = instances::decreasing_chain(rng, xshape, n, true);
  const FiniteSequence us = instances::decreasing_chain(rng, ushape, n, true);
  const FiniteSequence gaps = instances::nonneg_prefix_sequence(rng, ushape, n, 0.5);
  std::vector<Element> vs;
  for (std::size_t k = 0; k < n; ++k) vs.push_back(us[k] + gaps[k]);
  Json j;
  j["phi"] = std::string(to_string(v));
  j["side"] = side == TomicWeylSide::left ? "left" : "right";
  j["xs"] = to_json(xs);
  j["us"] = to_json(us);
  j["vs"] = to_json(FiniteSequence(std::move(vs)));
  return j;
}

Outcome check_tomic_weyl(const Json& j, double tol) {
  const BilinearMap phi(parse_bilinear_variant(j.at("phi").get<std::string>()));
  const TomicWeylSide side = j.at("side").get<std::string>() == "left" ? TomicWeylSide::left : TomicWeylSide::right;
  const TomicWeylResult r = tomic_weyl_check(phi, sequence_from_json(j.at("xs")), sequence_from_json(j.at("us")),
                                             sequence_from_json(j.at("vs")), side);
  const double slack = r.slack / std::max(1.0, norm(r.sum_v));
  return make_outcome(slack >= -tol, slack);
}

Json random_vector_tw(Rng& rng, const SizeCaps& caps) {
  const std::size_t n = draw_size(rng, 1, std::max<std::size_t>(caps.dim, 1));
  const bool strong = rng.bernoulli(0.5);
  Json j;
  Json f;
  // Nondecreasing convex handles on the sampled range [0.5, 3].
  switch (rng.uniform_int(0, 2)) {
    case 0:
      f = function_to_json("square", {});
      break;
    case 1:
      f = function_to_json("exp", {});
      break;
    default:
      f = function_to_json("hinge", {{"c", rng.dyadic(0.0, 3.0)}});
  }
  const instances::MajorizationPair p = instances::submajorized_pair(rng, n, strong, 0.5, 3.0);
  j["f"] = std::move(f);
  j["x"] = p.x;
  j["y"] = p.y;
  return j;
}

Outcome check_vector_tw(const Json& j, double tol) {
  const SumInequality r = tomic_weyl_vector_check(function_from_json(j.at("f")), j.at("x").get<std::vector<double>>(),
                                                  j.at("y").get<std::vector<double>>());
  const double slack = r.slack / (1.0 + std::abs(r.rhs));
  return make_outcome(slack >= -tol, slack);
}

Outcome check_majorization_examples(const Json&, double) {
  const MajorizationResult a = submajorize_check(std::vector<double>{1, 1}, std::vector<double>{2, 0});
  const MajorizationResult b = submajorize_check(std::vector<double>{3, 0}, std::vector<double>{2, 2});
  const std::vector<double> r = decreasing_rearrangement(std::vector<double>{-1, -3, 0});
  const bool ok = a.weak && a.strong && !b.weak && b.first_violation == 1u && r == std::vector<double>{0, -1, -3};
  // A theorem instance with x_n < 0: the decreasing x must also be nonneg.
  bool rejected = false;
  try {
    tomic_weyl_check(BilinearMap(BilinearVariant::scalar_multiply), FiniteSequence::scalars({-1.0}),
                     FiniteSequence::scalars({0.0}), FiniteSequence::scalars({1.0}), TomicWeylSide::left);
  } catch (const PreconditionError&) {
    rejected = true;
  }
  return make_outcome(ok && rejected, ok && rejected ? 0.0 : -1.0);
}

}  // namespace

void add_inequality_properties(std::vector<Property>& out) {
  out.push_back({"positive-sum", "condition_i",
                 1e-12, false,
                 [](Rng& rng, const SizeCaps& caps) {
                   return positive_sum_instance(rng, caps, PositiveSumCondition::decreasing_prefix);
                 },
                 check_positive_sum});
  out.push_back({"positive-sum", "condition_ii", 1e-12, false,
                 [](Rng& rng, const SizeCaps& caps) {
                   return positive_sum_instance(rng, caps, PositiveSumCondition::increasing_suffix);
                 },
                 check_positive_sum});
  out.push_back({"positive-sum", "abs_value_split", 1e-12, false, random_abs_split, check_abs_split});

  out.push_back({"jensen-steffensen", "scalar_registry", 1e-10, false, random_js_scalar, check_js_scalar});
  out.push_back({"jensen-steffensen", "affine_equality", 1e-12, false, random_js_affine, check_js_affine});
  out.push_back({"jensen-steffensen", "vector_lattice", 1e-10, false, random_js_vector, check_js_vector});
  out.push_back({"jensen-steffensen", "hand_examples", 1e-15, true,
                 [](Rng&, const SizeCaps&) { return Json::object(); }, check_js_examples});

  out.push_back({"hlp", "round_trip", 1e-12, false, random_pwl, check_hlp_round_trip});
  out.push_back({"hlp", "hand_decompositions", 0.0, true, [](Rng&, const SizeCaps&) { return Json::object(); },
                 check_hlp_examples});

  out.push_back({"tomic-weyl", "bilinear_left", 1e-10, false,
                 [](Rng& rng, const SizeCaps& caps) { return tomic_weyl_instance(rng, caps, TomicWeylSide::left); },
                 check_tomic_weyl});
  out.push_back({"tomic-weyl", "bilinear_right", 1e-10, false,
                 [](Rng& rng, const SizeCaps& caps) { return tomic_weyl_instance(rng, caps, TomicWeylSide::right); },
                 check_tomic_weyl});
  out.push_back({"tomic-weyl", "vector_majorization", 1e-10, false, random_vector_tw, check_vector_tw});
  out.push_back({"tomic-weyl", "hand_examples", 0.0, true, [](Rng&, const SizeCaps&) { return Json::object(); },
                 check_majorization_examples});
}

}  // namespace abel::suites
