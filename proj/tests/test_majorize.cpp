#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "abel/error.hpp"
#include "abel/instances.hpp"
#include "abel/majorize.hpp"
#include "support/oracles.hpp"

using namespace abel;

namespace {

std::vector<double> vec(std::initializer_list<double> v) { return v; }

const BilinearMap kMul(BilinearVariant::scalar_multiply);

}  // namespace

TEST(Rearrangement, Examples) {
  EXPECT_EQ(decreasing_rearrangement(vec({1, 3, 2})), vec({3, 2, 1}));
  EXPECT_EQ(decreasing_rearrangement(vec({4, 4, 4})), vec({4, 4, 4}));
  EXPECT_EQ(decreasing_rearrangement(vec({-1, -3, 0})), vec({0, -1, -3}));
}

TEST(Submajorize, Examples) {
  const MajorizationResult a = submajorize_check(vec({1, 1}), vec({2, 0}));
  EXPECT_TRUE(a.weak);
  EXPECT_TRUE(a.strong);
  const MajorizationResult b = submajorize_check(vec({3, 0}), vec({2, 2}));
  EXPECT_FALSE(b.weak);
  EXPECT_EQ(b.first_violation, 1u);
  const MajorizationResult c = submajorize_check(vec({1, -2, 5}), vec({1, -2, 5}));
  EXPECT_TRUE(c.weak && c.strong);
  EXPECT_THROW(submajorize_check(vec({1}), vec({1, 2})), DomainError);
}

TEST(Submajorize, AgreesWithBruteForceOnTinyInstances) {
  Rng rng(21);
  int strong_yes = 0;
  for (int t = 0; t < 2000; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 6));
    std::vector<double> x;
    std::vector<double> y;
    if (t % 3 == 0) {
      const instances::MajorizationPair p = instances::submajorized_pair(rng, n, rng.bernoulli(0.5), -2, 2);
      x = p.x;
      y = p.y;
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        x.push_back(rng.dyadic(-2, 2));
        y.push_back(rng.dyadic(-2, 2));
      }
      if (t % 3 == 1) x.back() += std::accumulate(y.begin(), y.end(), 0.0) - std::accumulate(x.begin(), x.end(), 0.0);
    }
    const MajorizationResult r = submajorize_check(x, y);
    EXPECT_EQ(r.weak, oracle::subset_weak_majorization(x, y)) << "t = " << t;
    EXPECT_EQ(r.strong, oracle::convex_test_majorization(x, y)) << "t = " << t;
    strong_yes += r.strong;
  }
  EXPECT_GT(strong_yes, 100);
}

TEST(Submajorize, PermutationAveragesAreMajorized) {
  Rng rng(22);
  for (int t = 0; t < 300; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 6));
    const instances::MajorizationPair p = instances::submajorized_pair(rng, n, true, 0, 3);
    EXPECT_TRUE(submajorize_check(p.x, p.y).strong);
    EXPECT_TRUE(oracle::convex_test_majorization(p.x, p.y));
  }
}

TEST(Steffensen, Validation) {
  const SteffensenVerdict a = steffensen_validate(vec({0.5, -0.25, 0.75}));
  ASSERT_TRUE(a.valid());
  EXPECT_EQ(a.weights->partials, vec({0.5, 0.25, 1.0}));
  const SteffensenVerdict b = steffensen_validate(vec({1.5, -0.5}));
  EXPECT_FALSE(b.valid());
  EXPECT_EQ(b.violating_prefix, 1u);
  EXPECT_TRUE(steffensen_validate(std::vector<double>(7, 1.0 / 7.0)).valid());
  EXPECT_FALSE(steffensen_validate(vec({0.5, 0.4})).valid());
  EXPECT_FALSE(steffensen_validate(vec({-0.1, 1.1})).valid());
  EXPECT_THROW(steffensen_weights(vec({1.5, -0.5})), PreconditionError);
}

TEST(Steffensen, GeneratedWeightsValidate) {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 50));
    EXPECT_TRUE(steffensen_validate(instances::steffensen_weights(rng, n)).valid());
    const std::vector<double> c = instances::steffensen_weights(rng, n, true);
    EXPECT_TRUE(std::all_of(c.begin(), c.end(), [](double w) { return w >= 0; }));
  }
}

TEST(JensenSteffensen, Examples) {
  const JensenResult sq = jensen_steffensen_check(make_function("square"), vec({0, 1, 2}),
                                                  steffensen_weights(vec({0.5, -0.25, 0.75})));
  EXPECT_EQ(sq.lhs.value(), 1.5625);
  EXPECT_EQ(sq.rhs.value(), 2.75);
  EXPECT_TRUE(sq.holds);
  const JensenResult ab = jensen_steffensen_check(make_function("abs"), vec({-1, 0, 1}),
                                                  steffensen_weights(std::vector<double>(3, 1.0 / 3.0)));
  EXPECT_NEAR(ab.lhs.value(), 0.0, 1e-16);
  EXPECT_NEAR(ab.rhs.value(), 2.0 / 3.0, 1e-15);
  EXPECT_TRUE(ab.holds);
  const JensenResult af = jensen_steffensen_check(make_function("affine", {{"a", 3}, {"b", -1}}), vec({0, 1, 2}),
                                                  steffensen_weights(vec({0.5, -0.25, 0.75})));
  EXPECT_EQ(af.slack, 0.0);
}

TEST(JensenSteffensen, Preconditions) {
  const SteffensenWeights w = steffensen_weights(vec({0.5, -0.25, 0.75}));
  EXPECT_THROW(jensen_steffensen_check(make_function("square"), vec({0, 2, 1}), w), PreconditionError);
  EXPECT_THROW(jensen_steffensen_check(make_function("sqrt"), vec({0, 1, 2}), w), PreconditionError);
  ScalarFunction::Traits nonneg;
  nonneg.convex = true;
  nonneg.domain = Interval::nonnegative();
  const ScalarFunction half_square = ScalarFunction::custom("half_square", [](double x) { return x * x; }, nonneg);
  EXPECT_THROW(jensen_steffensen_check(half_square, vec({-1, 0, 1}), w), DomainError);
  EXPECT_THROW(jensen_steffensen_check(make_function("arctan_plus_x"), vec({0, 1, 2}), w), PreconditionError);
}

TEST(JensenSteffensen, UnverifiedConvexityIsFlagged) {
  ScalarFunction::Traits traits;
  traits.convex = true;
  const ScalarFunction f = ScalarFunction::custom("quartic", [](double x) { return x * x * x * x; }, traits);
  const JensenResult r = jensen_steffensen_check(f, vec({0, 1, 2}), steffensen_weights(vec({0.5, -0.25, 0.75})));
  EXPECT_FALSE(r.convexity_verified);
  EXPECT_TRUE(r.holds);
}

TEST(JensenSteffensen, NegativeWeightsCanBreakNonMonotonePoints) {
  // The monotonicity hypothesis matters: the same weights on unsorted points
  // give f(sum w x) > sum w f(x) for x^2, which the check refuses to evaluate.
  const std::vector<double> x = {0, 2, 1};
  const std::vector<double> w = {0.5, -0.25, 0.75};
  double m = 0;
  double r = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    m += w[i] * x[i];
    r += w[i] * x[i] * x[i];
  }
  EXPECT_GT(m * m, r);
  EXPECT_THROW(jensen_steffensen_check(make_function("square"), x, steffensen_weights(w)), PreconditionError);
}

TEST(JensenSteffensen, VectorLatticeForm) {
  Matrix l(2, 2);
  l << 1, 0, 0, -1;
  const LatticeConvexFunction f(l, {0.5, 0}, {{1.0, {0, 0}}, {0.5, {1, -1}}});
  const FiniteSequence xs({Element::vector({0, 0}), Element::vector({1, 0.5}), Element::vector({2, 1})});
  const JensenResult r = jensen_steffensen_check(f, xs, steffensen_weights(vec({0.5, -0.25, 0.75})));
  EXPECT_TRUE(r.holds);
  EXPECT_GE(r.slack, 0.0);
  EXPECT_THROW(LatticeConvexFunction(l, {0, 0}, {{-1.0, {0, 0}}}), DomainError);
}

TEST(AbsDecomposition, PartsAreNonnegative) {
  Rng rng(24);
  for (int t = 0; t < 300; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 30));
    const std::vector<double> xs = instances::monotone_points(rng, n, -2, 2, Direction::increasing);
    const AbsDecomposition d = js_abs_decomposition(xs, steffensen_weights(instances::steffensen_weights(rng, n)));
    EXPECT_TRUE(d.parts_nonneg);
    EXPECT_TRUE(d.holds);
    EXPECT_LE(d.lhs, d.rhs + 1e-12);
  }
}

TEST(PositiveSum, Examples) {
  const PositiveSumResult i = positive_sum_check(kMul, FiniteSequence::scalars({2, 1}), FiniteSequence::scalars({1, -0.5}),
                                                 PositiveSumCondition::decreasing_prefix);
  EXPECT_EQ(i.value.value(), 1.5);
  EXPECT_TRUE(i.holds);
  const PositiveSumResult ii = positive_sum_check(kMul, FiniteSequence::scalars({1, 2}), FiniteSequence::scalars({-0.5, 1}),
                                                  PositiveSumCondition::increasing_suffix);
  EXPECT_EQ(ii.value.value(), 1.5);
  EXPECT_TRUE(ii.holds);
  const PositiveSumResult z = positive_sum_check(kMul, FiniteSequence::scalars({2, 1}), FiniteSequence::scalars({0, 0}),
                                                 PositiveSumCondition::decreasing_prefix);
  EXPECT_EQ(z.value.value(), 0.0);
  EXPECT_TRUE(z.holds);
}

TEST(PositiveSum, Preconditions) {
  EXPECT_THROW(positive_sum_check(kMul, FiniteSequence::scalars({1, 2}), FiniteSequence::scalars({1, 1}),
                                  PositiveSumCondition::decreasing_prefix),
               PreconditionError);
  try {
    positive_sum_check(kMul, FiniteSequence::scalars({2, 1}), FiniteSequence::scalars({1, -2}),
                       PositiveSumCondition::decreasing_prefix);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(Pwl, ConstructionAndEvaluation) {
  const PwlConvexFunction f(-2, 2, {-1, 1}, {-1, 0, 1}, 1.0);
  EXPECT_EQ(f(-2), 1.0);
  EXPECT_EQ(f(0), 0.0);
  EXPECT_EQ(f(1.5), 0.5);
  EXPECT_THROW(f(3), DomainError);
  EXPECT_THROW(PwlConvexFunction(-1, 1, {0}, {1, 1}, 0), DomainError);
  EXPECT_THROW(PwlConvexFunction(-1, 1, {0}, {1, 0}, 0), DomainError);
  EXPECT_THROW(PwlConvexFunction(-1, 1, {2}, {0, 1}, 0), DomainError);
}

TEST(Hlp, HandDecompositions) {
  const HlpDecomposition a = hlp_decompose(PwlConvexFunction(-1, 1, {0}, {-1, 1}, 1));
  EXPECT_EQ(a.alpha, 0.0);
  EXPECT_EQ(a.beta, 0.0);
  ASSERT_EQ(a.terms.size(), 1u);
  EXPECT_EQ(a.terms[0].center, 0.0);
  EXPECT_EQ(a.terms[0].coefficient, 1.0);

  const HlpDecomposition b = hlp_decompose(PwlConvexFunction(-1, 1, {0}, {0, 1}, 0));
  EXPECT_EQ(b.alpha, 0.5);
  EXPECT_EQ(b.beta, 0.0);
  EXPECT_EQ(b.terms[0].coefficient, 0.5);

  const HlpDecomposition c = hlp_decompose(PwlConvexFunction(-2, 2, {-1, 1}, {-1, 0, 1}, 1));
  EXPECT_EQ(c.alpha, 0.0);
  EXPECT_EQ(c.beta, -1.0);
  ASSERT_EQ(c.terms.size(), 2u);
  EXPECT_EQ(c.terms[0].center, -1.0);
  EXPECT_EQ(c.terms[0].coefficient, 0.5);
  EXPECT_EQ(c.terms[1].center, 1.0);
  EXPECT_EQ(c.terms[1].coefficient, 0.5);
}

TEST(Hlp, EvaluateExamples) {
  EXPECT_EQ(hlp_evaluate({0, 0, {{0, 1}}}, -3), 3.0);
  EXPECT_EQ(hlp_evaluate({0.5, 0, {{0, 0.5}}}, -1), 0.0);
}

TEST(Hlp, RoundTripOnRandomFunctions) {
  Rng rng(25);
  for (int t = 0; t < 500; ++t) {
    const PwlConvexFunction f = instances::pwl_convex(rng, static_cast<std::size_t>(rng.uniform_int(0, 20)));
    const HlpDecomposition d = hlp_decompose(f);
    for (const auto& term : d.terms) EXPECT_GE(term.coefficient, 0.0);
    EXPECT_EQ(hlp_evaluate(d, f.a()), f.anchor_value());
    // Oracle grid, evaluated independently of hlp_reconstruction_error.
    double sup = 0;
    double fmax = 0;
    for (int i = 0; i < 1000; ++i) {
      const double x = f.a() + (f.b() - f.a()) * i / 999.0;
      sup = std::max(sup, std::abs(f(x) - hlp_evaluate(d, x)));
      fmax = std::max(fmax, std::abs(f(x)));
    }
    EXPECT_LE(sup, 1e-12 * (1 + fmax));
    const ReconstructionError e = hlp_reconstruction_error(f, d);
    EXPECT_LE(e.sup_error, 1e-12 * (1 + e.max_abs_f));
  }
}

TEST(Hlp, AffineFunctionHasNoTerms) {
  Rng rng(26);
  const PwlConvexFunction f = instances::pwl_convex(rng, 0);
  EXPECT_TRUE(hlp_decompose(f).terms.empty());
}

TEST(Hlp, FunctionHandleIsConvex) {
  const HlpDecomposition d = hlp_decompose(PwlConvexFunction(-2, 2, {-1, 1}, {-1, 0, 1}, 1));
  const ScalarFunction f = hlp_function(d);
  EXPECT_TRUE(f.convex());
  EXPECT_EQ(f(0), 0.0);
  EXPECT_THROW(hlp_function({0, 0, {{0, -1}}}), DomainError);
}

TEST(TomicWeyl, Examples) {
  const TomicWeylResult r = tomic_weyl_check(kMul, FiniteSequence::scalars({1, 0.5}), FiniteSequence::scalars({2, 1}),
                                             FiniteSequence::scalars({3, 1}), TomicWeylSide::left);
  EXPECT_EQ(r.sum_u.value(), 2.5);
  EXPECT_EQ(r.sum_v.value(), 3.5);
  EXPECT_TRUE(r.holds);
  const FiniteSequence u = FiniteSequence::scalars({2, 1});
  const TomicWeylResult eq = tomic_weyl_check(kMul, FiniteSequence::scalars({1, 0.5}), u, u, TomicWeylSide::right);
  EXPECT_EQ(eq.slack, 0.0);
}

TEST(TomicWeyl, NonnegativeXIsRequired) {
  // x = (-1), u = (0), v = (1) satisfies every other hypothesis yet
  // sum x u = 0 > -1 = sum x v.
  EXPECT_THROW(tomic_weyl_check(kMul, FiniteSequence::scalars({-1}), FiniteSequence::scalars({0}),
                                FiniteSequence::scalars({1}), TomicWeylSide::left),
               PreconditionError);
}

TEST(TomicWeyl, Preconditions) {
  EXPECT_THROW(tomic_weyl_check(kMul, FiniteSequence::scalars({1, 2}), FiniteSequence::scalars({2, 1}),
                                FiniteSequence::scalars({3, 1}), TomicWeylSide::left),
               PreconditionError);
  EXPECT_THROW(tomic_weyl_check(kMul, FiniteSequence::scalars({1, 0.5}), FiniteSequence::scalars({2, 1}),
                                FiniteSequence::scalars({1, 1}), TomicWeylSide::left),
               PreconditionError);
}

TEST(TomicWeyl, VectorForm) {
  const SumInequality s = tomic_weyl_vector_check(make_function("square"), vec({1, 1}), vec({2, 0}));
  EXPECT_EQ(s.lhs, 2.0);
  EXPECT_EQ(s.rhs, 4.0);
  EXPECT_TRUE(s.holds);
  // Weak majorization needs f nondecreasing where the entries lie.
  EXPECT_NO_THROW(tomic_weyl_vector_check(make_function("exp"), vec({0.5, 0}), vec({1, 0})));
  EXPECT_THROW(tomic_weyl_vector_check(make_function("square"), vec({-2, -1}), vec({0, 0})), PreconditionError);
  EXPECT_THROW(tomic_weyl_vector_check(make_function("square"), vec({3, 0}), vec({2, 2})), PreconditionError);
}

TEST(TomicWeyl, RandomVectorInstancesAgainstDirectSums) {
  Rng rng(27);
  for (int t = 0; t < 300; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const instances::MajorizationPair p = instances::submajorized_pair(rng, n, rng.bernoulli(0.5), 0.5, 3);
    const ScalarFunction f = make_function("exp");
    const SumInequality s = tomic_weyl_vector_check(f, p.x, p.y);
    long double lhs = 0;
    long double rhs = 0;
    for (std::size_t i = 0; i < n; ++i) {
      lhs += std::exp(static_cast<long double>(p.x[i]));
      rhs += std::exp(static_cast<long double>(p.y[i]));
    }
    EXPECT_TRUE(s.holds);
    EXPECT_LE(lhs, rhs * (1 + 1e-12L));
  }
}
