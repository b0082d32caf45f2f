#include <gtest/gtest.h>

#include <cmath>

#include "abel/error.hpp"
#include "abel/instances.hpp"
#include "abel/random.hpp"
#include "abel/spectral.hpp"
#include "support/oracles.hpp"

using namespace abel;

namespace {

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix diag(std::initializer_list<double> v) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}

// Tr f(A) through Eigen's solver.
double oracle_trace(const Matrix& a, double (*f)(double)) {
  double t = 0;
  for (double l : oracle::eigenvalues(a)) t += f(l);
  return t;
}

double sq(double x) { return x * x; }
double ex(double x) { return std::exp(x); }

}  // namespace

TEST(Jacobi, Examples) {
  const SpectralDecomposition d = sym_eigendecompose(m2(2, 1, 1, 2));
  EXPECT_NEAR(d.eigenvalues[0], 3.0, 1e-14);
  EXPECT_NEAR(d.eigenvalues[1], 1.0, 1e-14);
  EXPECT_NEAR(std::abs(d.eigenvectors(0, 0)), M_SQRT1_2, 1e-14);
  EXPECT_NEAR(d.eigenvectors(0, 0), d.eigenvectors(1, 0), 1e-14);
  EXPECT_NEAR(d.eigenvectors(0, 1), -d.eigenvectors(1, 1), 1e-14);

  const SpectralDecomposition g = sym_eigendecompose(diag({5, 2, -1}));
  EXPECT_EQ(g.eigenvalues, (std::vector<double>{5, 2, -1}));
  EXPECT_NEAR((g.eigenvectors.cwiseAbs() - Matrix::Identity(3, 3)).norm(), 0.0, 1e-15);

  const SpectralDecomposition z = sym_eigendecompose(Matrix::Zero(4, 4));
  for (double l : z.eigenvalues) EXPECT_EQ(l, 0.0);
}

TEST(Jacobi, RejectsNonSymmetric) {
  EXPECT_THROW(sym_eigendecompose(m2(1, 2, 3, 4)), DomainError);
  EXPECT_THROW(sym_eigendecompose(Matrix::Zero(2, 3)), DomainError);
}

TEST(Jacobi, MatchesEigenOracle) {
  Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const Matrix a = random_symmetric(rng, n, 5.0);
    const SpectralDecomposition d = sym_eigendecompose(a);
    const std::vector<double> want = oracle::eigenvalues(a);
    ASSERT_EQ(d.eigenvalues.size(), want.size());
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(d.eigenvalues[i], want[i], 1e-12 * (1 + std::abs(want[i])));
    const DecompositionQuality q = decomposition_quality(a, d);
    EXPECT_LE(q.reconstruction, 1e-10);
    EXPECT_LE(q.orthogonality, 1e-10);
    EXPECT_LE((d.reconstruct() - a).norm(), 1e-10 * std::max(a.norm(), 1.0));
  }
}

TEST(Jacobi, RepeatedEigenvalues) {
  Rng rng(32);
  const Matrix q = random_orthogonal(rng, 6);
  const Matrix a = symmetrized(q * diag({2, 2, 2, -1, -1, 0}) * q.transpose());
  const SpectralDecomposition d = sym_eigendecompose(a);
  EXPECT_LE(decomposition_quality(a, d).reconstruction, 1e-10);
  EXPECT_NEAR(d.eigenvalues[0], 2.0, 1e-12);
  EXPECT_NEAR(d.eigenvalues[5], -1.0, 1e-12);
}

TEST(MatrixFunction, Examples) {
  EXPECT_NEAR((matrix_function(m2(0, 1, 1, 0), make_function("square")) - Matrix::Identity(2, 2)).norm(), 0, 1e-14);
  const Matrix e = matrix_function(diag({0, std::log(2.0)}), make_function("exp"));
  EXPECT_NEAR(e(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(e(1, 1), 2.0, 1e-15);
  Rng rng(33);
  const Matrix a = random_symmetric(rng, 5);
  EXPECT_LE((matrix_function(a, make_function("identity")) - a).norm(), 1e-10);
  EXPECT_THROW(matrix_function(diag({1, -1}), make_function("sqrt")), DomainError);
}

TEST(MatrixFunction, ResultIsExactlySymmetric) {
  Rng rng(34);
  const Matrix f = matrix_function(random_symmetric(rng, 6), make_function("exp"));
  EXPECT_EQ(f, f.transpose());
}

TEST(TraceIdentities, FrobeniusAndTraceProduct) {
  Rng rng(35);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const Matrix a = random_symmetric(rng, n, 3);
    const Matrix b = random_symmetric(rng, n, 3);
    EXPECT_NEAR(frobenius_via_trace(a), a.norm(), 1e-12 * a.norm());
    EXPECT_NEAR(trace_product(a, b), static_cast<double>(oracle::trace_product(a, b)), 1e-12 * (1 + a.norm() * b.norm()));
    const Matrix p = random_psd(rng, n);
    const Matrix r = random_psd(rng, n);
    EXPECT_GE(trace_product(p, r), -1e-12);
  }
}

TEST(LoewnerChain, Examples) {
  const std::vector<Matrix> good = {diag({2, 2}), diag({1, 1})};
  const PsdChain g = loewner_chain_verify(good);
  EXPECT_TRUE(g.decreasing);
  EXPECT_TRUE(g.terminal_nonneg);
  EXPECT_FALSE(g.dominated.has_value());
  const std::vector<Matrix> bad = {diag({1, 0}), diag({0, 1})};
  const PsdChain b = loewner_chain_verify(bad);
  EXPECT_FALSE(b.decreasing);
  EXPECT_EQ(b.witness_index, 1u);
}

TEST(LoewnerChain, ConstructedChainsVerify) {
  Rng rng(36);
  for (int t = 0; t < 200; ++t) {
    const instances::PsdChainInstance c = instances::psd_chain(rng, static_cast<std::size_t>(rng.uniform_int(1, 8)),
                                                               static_cast<std::size_t>(rng.uniform_int(1, 6)));
    const PsdChain v = loewner_chain_verify(c.as, c.bs);
    EXPECT_TRUE(v.hypotheses_hold()) << v.detail;
    // Oracle: prefix differences have nonnegative spectra under Eigen.
    Matrix sa = Matrix::Zero(c.as[0].rows(), c.as[0].cols());
    Matrix sb = sa;
    for (std::size_t k = 0; k < c.as.size(); ++k) {
      sa += c.as[k];
      sb += c.bs[k];
      EXPECT_GE(oracle::eigenvalues(sb - sa).back(), -1e-10);
      EXPECT_GE(oracle::eigenvalues(c.bs[k]).back(), -1e-10);
    }
  }
}

TEST(TraceTomicWeyl, Examples) {
  const std::vector<Matrix> as = {diag({2, 1})};
  const std::vector<Matrix> bs = {diag({3, 1})};
  const TraceInequality r = trace_tomic_weyl_check(as, bs, make_function("square"));
  EXPECT_NEAR(r.lhs, 5.0, 1e-14);
  EXPECT_NEAR(r.rhs, 10.0, 1e-14);
  EXPECT_TRUE(r.holds);
  const ChungResult c = chung_intermediate_check(as, bs);
  EXPECT_NEAR(c.cross_term, 7.0, 1e-14);
  EXPECT_TRUE(c.all_hold());
}

TEST(TraceTomicWeyl, LinearFunctionReducesToTraces) {
  Rng rng(37);
  const instances::PsdChainInstance c = instances::psd_chain(rng, 4, 5);
  const TraceInequality r = trace_tomic_weyl_check(c.as, c.bs, make_function("identity"));
  double ta = 0;
  double tb = 0;
  for (std::size_t k = 0; k < c.as.size(); ++k) {
    ta += c.as[k].trace();
    tb += c.bs[k].trace();
  }
  EXPECT_NEAR(r.lhs, ta, 1e-12 * (1 + ta));
  EXPECT_NEAR(r.rhs, tb, 1e-12 * (1 + tb));
  EXPECT_TRUE(r.holds);
}

TEST(TraceTomicWeyl, RejectsBrokenHypotheses) {
  const std::vector<Matrix> inc = {diag({1, 1}), diag({2, 2})};
  EXPECT_THROW(trace_tomic_weyl_check(inc, inc, make_function("square")), PreconditionError);
  const std::vector<Matrix> as = {diag({2, 1})};
  const std::vector<Matrix> small = {diag({1, 1})};
  try {
    trace_tomic_weyl_check(as, small, make_function("square"));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
  EXPECT_THROW(trace_tomic_weyl_check(as, std::vector<Matrix>{diag({3, 1})}, make_function("arctan_plus_x")),
               PreconditionError);
}

TEST(TraceTomicWeyl, RandomChainsAgainstEigenOracle) {
  Rng rng(38);
  for (int t = 0; t < 200; ++t) {
    const instances::PsdChainInstance c = instances::psd_chain(rng, static_cast<std::size_t>(rng.uniform_int(1, 8)),
                                                               static_cast<std::size_t>(rng.uniform_int(1, 6)));
    const TraceInequality r = trace_tomic_weyl_check(c.as, c.bs, make_function("exp"));
    double lhs = 0;
    double rhs = 0;
    for (std::size_t k = 0; k < c.as.size(); ++k) {
      lhs += oracle_trace(c.as[k], ex);
      rhs += oracle_trace(c.bs[k], ex);
    }
    EXPECT_NEAR(r.lhs, lhs, 1e-10 * (1 + lhs));
    EXPECT_NEAR(r.rhs, rhs, 1e-10 * (1 + rhs));
    EXPECT_LE(lhs, rhs + 1e-8 * (1 + rhs));
    EXPECT_TRUE(r.holds);
    const TraceInequality s = trace_tomic_weyl_check(c.as, c.bs, make_function("square"));
    EXPECT_EQ(s.holds, chung_intermediate_check(c.as, c.bs).chung_holds);
  }
}

TEST(Chung, EqualChainsGiveEquality) {
  Rng rng(39);
  const instances::PsdChainInstance c = instances::psd_chain(rng, 3, 4);
  const ChungResult r = chung_intermediate_check(c.as, c.as);
  EXPECT_TRUE(r.all_hold());
  EXPECT_NEAR(r.sum_trace_a2, r.cross_term, 1e-12 * r.cross_term);
  EXPECT_NEAR(r.sum_trace_a2, r.sum_trace_b2, 1e-12 * r.sum_trace_b2);
}

TEST(Chung, RandomChainsAgainstDirectProducts) {
  Rng rng(40);
  for (int t = 0; t < 200; ++t) {
    const instances::PsdChainInstance c = instances::psd_chain(rng, static_cast<std::size_t>(rng.uniform_int(1, 8)),
                                                               static_cast<std::size_t>(rng.uniform_int(1, 6)));
    const ChungResult r = chung_intermediate_check(c.as, c.bs);
    EXPECT_TRUE(r.all_hold());
    long double a2 = 0;
    long double ab = 0;
    long double b2 = 0;
    for (std::size_t k = 0; k < c.as.size(); ++k) {
      a2 += oracle::trace_product(c.as[k], c.as[k]);
      ab += oracle::trace_product(c.as[k], c.bs[k]);
      b2 += oracle::trace_product(c.bs[k], c.bs[k]);
    }
    EXPECT_NEAR(r.cross_term, static_cast<double>(ab), 1e-12 * (1 + static_cast<double>(ab)));
    EXPECT_LE(a2, ab * (1 + 1e-8L));
    EXPECT_LE(ab * ab, a2 * b2 * (1 + 1e-8L));
    EXPECT_LE(a2, b2 * (1 + 1e-8L));
  }
}

TEST(GradientStep, Examples) {
  const ScalarFunction f = make_function("square");
  const Matrix x = m2(1, 2, 2, -3);
  const TraceInequality z = gradient_step_check(Matrix::Zero(2, 2), x, f);
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_NEAR(z.rhs, (x * x).trace(), 1e-13);
  const TraceInequality r = gradient_step_check(Matrix::Identity(2, 2), diag({2, 0}), f);
  EXPECT_NEAR(r.lhs, 0.0, 1e-14);
  EXPECT_NEAR(r.rhs, 2.0, 1e-14);
  EXPECT_TRUE(r.holds);
  EXPECT_THROW(gradient_step_check(Matrix::Zero(2, 2), x, make_function("hinge", {{"c", 0}})), PreconditionError);
}

TEST(GradientStep, RandomPairsAgainstEigenOracle) {
  Rng rng(41);
  const ScalarFunction f = make_function("exp");
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 8));
    const Matrix a = random_symmetric(rng, n);
    const Matrix x = random_symmetric(rng, n);
    const TraceInequality r = gradient_step_check(a, x, f);
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    const Matrix fa = es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() *
                      es.eigenvectors().transpose();
    const double lhs = (fa * (x - a)).trace();
    const double rhs = oracle_trace(x, ex) - oracle_trace(a, ex);
    EXPECT_NEAR(r.lhs, lhs, 1e-10 * (1 + std::abs(lhs)));
    EXPECT_NEAR(r.rhs, rhs, 1e-10 * (1 + std::abs(rhs)));
    EXPECT_TRUE(r.holds);
  }
}

TEST(TraceMonotone, Examples) {
  const TraceInequality a = trace_monotone_check(Matrix::Zero(3, 3), Matrix::Identity(3, 3), make_function("identity"));
  EXPECT_EQ(a.lhs, 0.0);
  EXPECT_NEAR(a.rhs, 3.0, 1e-15);
  const TraceInequality b = trace_monotone_check(Matrix::Identity(2, 2), m2(2, 1, 1, 2), make_function("exp"));
  EXPECT_NEAR(b.lhs, 2 * std::exp(1.0), 1e-13);
  EXPECT_NEAR(b.rhs, std::exp(3.0) + std::exp(1.0), 1e-12);
  EXPECT_TRUE(b.holds);
  EXPECT_THROW(trace_monotone_check(diag({1, 0}), diag({0, 1}), make_function("exp")), PreconditionError);
  // x^2 is increasing only on [0, inf).
  EXPECT_TRUE(trace_monotone_check(diag({0, 0}), diag({1, 1}), make_function("square")).holds);
  EXPECT_THROW(trace_monotone_check(diag({-1, -1}), diag({0, 0}), make_function("square")), PreconditionError);
}

TEST(TraceMonotone, RandomPairs) {
  Rng rng(42);
  for (const char* h : {"cube", "arctan_plus_x"}) {
    for (int t = 0; t < 100; ++t) {
      const auto n = static_cast<std::size_t>(rng.uniform_int(1, 8));
      const Matrix u = random_symmetric(rng, n);
      const Matrix v = symmetrized(u + random_psd(rng, n));
      EXPECT_TRUE(trace_monotone_check(u, v, make_function(h)).holds);
    }
  }
}

TEST(TraceConvexity, RandomMixtures) {
  Rng rng(43);
  for (const char* name : {"square", "exp", "abs"}) {
    for (double lambda : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      for (int t = 0; t < 20; ++t) {
        const auto n = static_cast<std::size_t>(rng.uniform_int(1, 8));
        const Matrix a = random_symmetric(rng, n);
        const Matrix b = random_symmetric(rng, n);
        const TraceInequality r = trace_convexity_check(a, b, lambda, make_function(name));
        EXPECT_TRUE(r.holds) << name << " " << lambda;
        const double f = name[0] == 's' ? oracle_trace(lambda * a + (1 - lambda) * b, sq) : r.lhs;
        EXPECT_NEAR(r.lhs, f, 1e-10 * (1 + std::abs(f)));
      }
    }
  }
}
