// Trace inequalities over random symmetric and PSD matrices.

#include <algorithm>
#include <cmath>

#include "abel/ordered.hpp"
#include "abel/spectral.hpp"
#include "common.hpp"

namespace abel::suites {

namespace {

constexpr double kReconstructionTol = 1e-10;
constexpr std::size_t kTraceChainLength = 6;

std::size_t trace_dim(Rng& rng, const SizeCaps& caps) { return draw_size(rng, 1, std::max<std::size_t>(caps.dim, 1)); }

Json chain_json(const std::vector<Matrix>& ms) {
  Json j = Json::array();
  for (const Matrix& m : ms) j.push_back(to_json(m));
  return j;
}

std::vector<Matrix> chain_from(const Json& j) {
  std::vector<Matrix> out;
  for (const Json& m : j) out.push_back(matrix_from_json(m));
  return out;
}

// Worst relative reconstruction or orthogonality defect of the Jacobi
// decompositions of the given matrices.
double worst_decomposition(std::span<const Matrix> ms) {
  double worst = 0.0;
  for (const Matrix& m : ms) {
    const DecompositionQuality q = decomposition_quality(m, sym_eigendecompose(m));
    worst = std::max({worst, q.reconstruction, q.orthogonality});
  }
  return worst;
}

Json nondecreasing_convex_handle(Rng& rng) {
  switch (rng.uniform_int(0, 2)) {
    case 0:
      return function_to_json("square", {});
    case 1:
      return function_to_json("exp", {});
    default:
      return function_to_json("hinge", {{"c", rng.dyadic(-1.0, 2.0)}});
  }
}

Json random_chain_instance(Rng& rng, const SizeCaps& caps, bool with_f) {
  const std::size_t n = draw_size(rng, 1, std::min<std::size_t>(std::max<std::size_t>(caps.n, 1), kTraceChainLength));
  const instances::PsdChainInstance c = instances::psd_chain(rng, trace_dim(rng, caps), n);
  Json j;
  if (with_f) j["f"] = nondecreasing_convex_handle(rng);
  j["as"] = chain_json(c.as);
  j["bs"] = chain_json(c.bs);
  return j;
}

Outcome check_trace_tomic_weyl(const Json& j, double tol) {
  const ScalarFunction f = function_from_json(j.at("f"));
  const std::vector<Matrix> as = chain_from(j.at("as"));
  const std::vector<Matrix> bs = chain_from(j.at("bs"));
  const TraceInequality r = trace_tomic_weyl_check(as, bs, f);
  const double slack = r.slack / (1.0 + std::abs(r.rhs));
  bool pass = slack >= -tol;
  std::string detail = f.name() + ": " + fmt(r.lhs) + " <= " + fmt(r.rhs);
  if (f.name() == "square") {
    const bool chung = chung_intermediate_check(as, bs).chung_holds;
    pass = pass && chung == r.holds;
    if (chung != r.holds) detail += "; disagrees with the Chung chain";
  }
  const double recon = std::max(worst_decomposition(as), worst_decomposition(bs));
  if (recon > kReconstructionTol) detail += "; decomposition defect " + fmt(recon);
  return make_outcome(pass && recon <= kReconstructionTol, slack, detail);
}

Outcome check_chung(const Json& j, double tol) {
  const ChungResult r = chung_intermediate_check(chain_from(j.at("as")), chain_from(j.at("bs")));
  const bool pass = r.all_hold() && r.worst_slack >= -tol;
  return make_outcome(pass, r.worst_slack,
                      "sum Tr A^2 " + fmt(r.sum_trace_a2) + ", cross " + fmt(r.cross_term) + ", sum Tr B^2 " +
                          fmt(r.sum_trace_b2));
}

Json random_gradient_step(Rng& rng, const SizeCaps& caps) {
  const std::size_t d = trace_dim(rng, caps);
  Json j;
  j["f"] = function_to_json(rng.bernoulli(0.5) ? "square" : "exp", {});
  j["a"] = to_json(random_symmetric(rng, d));
  j["x"] = to_json(random_symmetric(rng, d));
  return j;
}

Outcome check_gradient_step(const Json& j, double tol) {
  const ScalarFunction f = function_from_json(j.at("f"));
  const TraceInequality r = gradient_step_check(matrix_from_json(j.at("a")), matrix_from_json(j.at("x")), f);
  return make_outcome(r.slack >= -tol, r.slack, f.name() + ": " + fmt(r.lhs) + " <= " + fmt(r.rhs));
}

Json random_monotone(Rng& rng, const SizeCaps& caps) {
  static const char* const kIncreasing[] = {"cube", "arctan_plus_x", "exp", "identity"};
  const std::size_t d = trace_dim(rng, caps);
  const Matrix u = random_symmetric(rng, d);
  const Matrix v = symmetrized(u + random_psd(rng, d));
  Json j;
  j["h"] = function_to_json(kIncreasing[rng.uniform_int(0, 3)], {});
  j["u"] = to_json(u);
  j["v"] = to_json(v);
  return j;
}

Outcome check_monotone(const Json& j, double tol) {
  const ScalarFunction h = function_from_json(j.at("h"));
  const TraceInequality r = trace_monotone_check(matrix_from_json(j.at("u")), matrix_from_json(j.at("v")), h);
  return make_outcome(r.slack >= -tol, r.slack, h.name() + ": " + fmt(r.lhs) + " <= " + fmt(r.rhs));
}

Json random_convexity(Rng& rng, const SizeCaps& caps) {
  static constexpr double kLambdas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const std::size_t d = trace_dim(rng, caps);
  Json f;
  switch (rng.uniform_int(0, 3)) {
    case 0:
      f = function_to_json("square", {});
      break;
    case 1:
      f = function_to_json("exp", {});
      break;
    case 2:
      f = function_to_json("abs", {});
      break;
    default:
      f = function_to_json("hinge", {{"c", rng.dyadic(-1.0, 1.0)}});
  }
  Json j;
  j["f"] = std::move(f);
  j["lambda"] = kLambdas[rng.uniform_int(0, 4)];
  j["a"] = to_json(random_symmetric(rng, d));
  j["b"] = to_json(random_symmetric(rng, d));
  return j;
}

Outcome check_convexity(const Json& j, double tol) {
  const ScalarFunction f = function_from_json(j.at("f"));
  const TraceInequality r = trace_convexity_check(matrix_from_json(j.at("a")), matrix_from_json(j.at("b")),
                                                  j.at("lambda").get<double>(), f);
  return make_outcome(r.slack >= -tol, r.slack, f.name() + " at lambda " + fmt(j.at("lambda").get<double>()));
}

// Generic, PSD, low-rank and repeated-eigenvalue symmetric matrices.
Json random_decomposable(Rng& rng, const SizeCaps& caps) {
  const std::size_t d = trace_dim(rng, caps);
  Matrix m;
  switch (rng.uniform_int(0, 3)) {
    case 0:
      m = random_symmetric(rng, d, 10.0);
      break;
    case 1:
      m = random_psd(rng, d);
      break;
    case 2: {
      const Matrix q = random_orthogonal(rng, d);
      Eigen::VectorXd l = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
      l(0) = rng.uniform(0.5, 2.0);
      m = symmetrized(q * l.asDiagonal() * q.transpose());
      break;
    }
    default: {
      const Matrix q = random_orthogonal(rng, d);
      Eigen::VectorXd l(static_cast<Eigen::Index>(d));
      for (Eigen::Index i = 0; i < l.size(); ++i) l(i) = i % 2 == 0 ? 1.0 : -2.0;
      m = symmetrized(q * l.asDiagonal() * q.transpose());
    }
  }
  Json j;
  j["a"] = to_json(m);
  return j;
}

Outcome check_decomposition(const Json& j, double tol) {
  const Matrix a = matrix_from_json(j.at("a"));
  const SpectralDecomposition d = sym_eigendecompose(a);
  const DecompositionQuality q = decomposition_quality(a, d);
  const bool sorted = std::is_sorted(d.eigenvalues.rbegin(), d.eigenvalues.rend());
  Outcome o = residual_outcome(std::max(q.reconstruction, q.orthogonality), tol,
                               "reconstruction " + fmt(q.reconstruction) + ", orthogonality " + fmt(q.orthogonality));
  o.pass = o.pass && sorted;
  return o;
}

Json random_symmetric_instance(Rng& rng, const SizeCaps& caps) {
  Json j;
  j["a"] = to_json(random_symmetric(rng, trace_dim(rng, caps), 4.0));
  return j;
}

Outcome check_frobenius(const Json& j, double tol) {
  const Matrix a = matrix_from_json(j.at("a"));
  const double direct = a.norm();
  const double via = frobenius_via_trace(a);
  const double residual = std::abs(via * via - direct * direct) / std::max(direct * direct, 1e-300);
  return residual_outcome(direct == 0.0 ? std::abs(via) : residual, tol);
}

Json random_psd_pair(Rng& rng, const SizeCaps& caps) {
  const std::size_t d = trace_dim(rng, caps);
  Json j;
  j["a"] = to_json(random_psd(rng, d));
  j["b"] = to_json(random_psd(rng, d));
  return j;
}

Outcome check_trace_pair(const Json& j, double tol) {
  const double t = trace_product(matrix_from_json(j.at("a")), matrix_from_json(j.at("b")));
  return make_outcome(t >= -tol, t, "Tr(AB) = " + fmt(t));
}

// ||A|| <= M iff -M I <= A <= M I, probed at the norm itself and slightly
// below it.
Outcome check_order_unit(const Json& j, double tol) {
  const Element a = Element::matrix(matrix_from_json(j.at("a")));
  const std::size_t d = a.dim();
  const double m = order_unit_norm(a, OrderUnit::canonical(a.shape()));
  const auto sandwiched = [&](double level) {
    const Element unit = Element::identity(d) * level;
    return less_equal(-unit, a, tol) && less_equal(a, unit, tol);
  };
  const double below = m - 1e-6 * (1.0 + m);
  const bool at = sandwiched(m);
  const bool under = m > 0.0 ? sandwiched(below) : false;
  return make_outcome(at && !under, at && !under ? 0.0 : -1.0, "norm " + fmt(m));
}

Outcome check_spectral_examples(const Json&, double tol) {
  double worst = 0.0;
  const auto diff = [&](double got, double want) { worst = std::max(worst, std::abs(got - want)); };

  Matrix m(2, 2);
  m << 2, 1, 1, 2;
  const SpectralDecomposition d = sym_eigendecompose(m);
  diff(d.eigenvalues[0], 3.0);
  diff(d.eigenvalues[1], 1.0);
  diff(std::abs(d.eigenvectors(0, 0)), 1.0 / std::sqrt(2.0));
  diff(std::abs(d.eigenvectors(1, 0)), 1.0 / std::sqrt(2.0));

  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  diff((matrix_function(swap, make_function("square")) - Matrix::Identity(2, 2)).norm(), 0.0);
  Matrix logs = Matrix::Zero(2, 2);
  logs(1, 1) = std::log(2.0);
  const Matrix e = matrix_function(logs, make_function("exp"));
  diff(e(0, 0), 1.0);
  diff(e(1, 1), 2.0);

  const std::vector<Matrix> as = {Eigen::Vector2d(2, 1).asDiagonal()};
  const std::vector<Matrix> bs = {Eigen::Vector2d(3, 1).asDiagonal()};
  const TraceInequality tw = trace_tomic_weyl_check(as, bs, make_function("square"));
  diff(tw.lhs, 5.0);
  diff(tw.rhs, 10.0);
  const ChungResult ch = chung_intermediate_check(as, bs);
  diff(ch.cross_term, 7.0);

  const TraceInequality gs = gradient_step_check(Matrix::Identity(2, 2), Eigen::Vector2d(2, 0).asDiagonal(),
                                                 make_function("square"));
  diff(gs.lhs, 0.0);
  diff(gs.rhs, 2.0);

  Matrix v(2, 2);
  v << 2, 1, 1, 2;
  const TraceInequality mono = trace_monotone_check(Matrix::Identity(2, 2), v, make_function("exp"));
  diff(mono.lhs, 2.0 * std::exp(1.0));
  diff(mono.rhs, std::exp(3.0) + std::exp(1.0));

  Matrix a(2, 2);
  a << 1, 0, 0, 2;
  Matrix b(2, 2);
  b << 1, 1, 1, 1;
  diff(trace_product(a, b), 3.0);

  Outcome o = residual_outcome(worst, tol, "hand-computed spectral values");
  o.pass = o.pass && tw.holds && ch.all_hold() && gs.holds && mono.holds;
  return o;
}

}  // namespace

void add_trace_properties(std::vector<Property>& out) {
  out.push_back({"trace", "trace_tomic_weyl", 1e-8, false,
                 [](Rng& rng, const SizeCaps& caps) { return random_chain_instance(rng, caps, true); },
                 check_trace_tomic_weyl});
  out.push_back({"trace", "chung_links", 1e-8, false,
                 [](Rng& rng, const SizeCaps& caps) { return random_chain_instance(rng, caps, false); },
                 check_chung});
  out.push_back({"trace", "gradient_step", 1e-9, false, random_gradient_step, check_gradient_step});
  out.push_back({"trace", "trace_monotone", 1e-9, false, random_monotone, check_monotone});
  out.push_back({"trace", "trace_convexity", 1e-9, false, random_convexity, check_convexity});
  out.push_back({"trace", "eigen_reconstruction", kReconstructionTol, false, random_decomposable,
                 check_decomposition});
  out.push_back({"trace", "frobenius_via_trace", 1e-12, false, random_symmetric_instance, check_frobenius});
  out.push_back({"trace", "trace_pair_positivity", 1e-12, false, random_psd_pair, check_trace_pair});
  out.push_back({"trace", "order_unit_consistency", 1e-10, false, random_symmetric_instance, check_order_unit});
  out.push_back({"trace", "hand_examples", 1e-12, true, [](Rng&, const SizeCaps&) { return Json::object(); },
                 check_spectral_examples});
}

}  // namespace abel::suites
