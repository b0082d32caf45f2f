#include "abel/instances.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "abel/error.hpp"
#include "abel/spectral.hpp"

namespace abel::instances {

namespace {

std::vector<double> dyadic_coords(Rng& rng, std::size_t count, double lo, double hi) {
  std::vector<double> v(count);
  for (double& x : v) x = rng.dyadic(lo, hi);
  return v;
}

Element coordinate_element(const Shape& shape, std::vector<double> coords) {
  return shape.kind == Kind::scalar ? Element::scalar(coords[0]) : Element::vector(std::move(coords));
}

// Nonnegative increment: dyadic for coordinates, PSD for matrices.
Element positive_increment(Rng& rng, const Shape& shape, double scale) {
  if (shape.kind == Kind::symmetric_matrix) return Element::matrix(random_psd(rng, shape.dim, scale));
  // A few exact zeros exercise equality in the ordering checks.
  std::vector<double> v(shape.dim);
  for (double& x : v) x = rng.bernoulli(0.15) ? 0.0 : rng.dyadic(0.0, scale);
  return coordinate_element(shape, std::move(v));
}

}  // namespace

std::vector<double> steffensen_weights(Rng& rng, std::size_t n, bool classical) {
  if (n == 0) throw DomainError("steffensen_weights: n must be >= 1");
  std::vector<double> prefix(n);
  for (std::size_t k = 0; k + 1 < n; ++k) prefix[k] = rng.dyadic(0.0, 1.0 + 1.0 / 64.0);
  prefix[n - 1] = 1.0;
  if (classical) std::sort(prefix.begin(), prefix.end());
  std::vector<double> w(n);
  double prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = prefix[k] - prev;
    prev = prefix[k];
  }
  return w;
}

std::vector<double> monotone_points(Rng& rng, std::size_t n, double lo, double hi, Direction direction) {
  std::vector<double> x = dyadic_coords(rng, n, lo, hi);
  if (direction == Direction::increasing) {
    std::sort(x.begin(), x.end());
  } else {
    std::sort(x.begin(), x.end(), std::greater<>());
  }
  return x;
}

Element dyadic_element(Rng& rng, const Shape& shape, double lo, double hi) {
  if (shape.kind == Kind::symmetric_matrix) {
    const std::size_t d = shape.dim;
    std::vector<double> data(d * d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) {
        data[i * d + j] = rng.dyadic(lo, hi);
        data[j * d + i] = data[i * d + j];
      }
    }
    return Element::matrix(d, std::move(data));
  }
  return coordinate_element(shape, dyadic_coords(rng, shape.dim, lo, hi));
}

FiniteSequence decreasing_chain(Rng& rng, const Shape& shape, std::size_t n, bool nonneg, double scale) {
  if (n == 0) throw DomainError("decreasing_chain: n must be >= 1");
  std::vector<Element> xs(n);
  xs[n - 1] = nonneg ? positive_increment(rng, shape, scale) : dyadic_element(rng, shape, -scale, scale);
  for (std::size_t k = n - 1; k-- > 0;) xs[k] = xs[k + 1] + positive_increment(rng, shape, scale);
  return FiniteSequence(std::move(xs));
}

FiniteSequence increasing_chain(Rng& rng, const Shape& shape, std::size_t n, bool nonneg, double scale) {
  const FiniteSequence dec = decreasing_chain(rng, shape, n, nonneg, scale);
  std::vector<Element> xs(dec.elements().rbegin(), dec.elements().rend());
  return FiniteSequence(std::move(xs));
}

FiniteSequence nonneg_prefix_sequence(Rng& rng, const Shape& shape, std::size_t n, double scale) {
  if (n == 0) throw DomainError("nonneg_prefix_sequence: n must be >= 1");
  std::vector<Element> ys;
  ys.reserve(n);
  Element prev = Element::zero(shape);
  for (std::size_t k = 0; k < n; ++k) {
    Element p = positive_increment(rng, shape, scale);
    ys.push_back(p - prev);
    prev = std::move(p);
  }
  return FiniteSequence(std::move(ys));
}

FiniteSequence nonneg_suffix_sequence(Rng& rng, const Shape& shape, std::size_t n, double scale) {
  const FiniteSequence pre = nonneg_prefix_sequence(rng, shape, n, scale);
  std::vector<Element> ys(pre.elements().rbegin(), pre.elements().rend());
  return FiniteSequence(std::move(ys));
}

PsdChainInstance psd_chain(Rng& rng, std::size_t dim, std::size_t n) {
  if (dim == 0 || n == 0) throw DomainError("psd_chain: dimension and length must be >= 1");
  const auto d = static_cast<Eigen::Index>(dim);
  const Matrix id = Matrix::Identity(d, d);
  PsdChainInstance c;
  c.as.resize(n);
  c.as[n - 1] = random_psd(rng, dim, 1.0);
  for (std::size_t k = n - 1; k-- > 0;) c.as[k] = c.as[k + 1] + random_psd(rng, dim, 0.5);

  constexpr double kMargin = 1e-2;
  Matrix prefix_gap = Matrix::Zero(d, d);  // sum_{k<j} (B_k - A_k)
  c.bs.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix e = random_symmetric(rng, dim, 0.3);
    const double need_prefix = -sym_eigendecompose(Matrix(prefix_gap + e)).eigenvalues.back();
    const double need_psd = -sym_eigendecompose(Matrix(c.as[k] + e)).eigenvalues.back();
    const double shift = std::max({0.0, need_prefix, need_psd}) + kMargin;
    c.bs[k] = c.as[k] + e + shift * id;
    prefix_gap += c.bs[k] - c.as[k];
  }
  return c;
}

PwlConvexFunction pwl_convex(Rng& rng, std::size_t breakpoints, bool nondecreasing) {
  const double a = rng.dyadic(-4.0, -1.0);
  const double b = rng.dyadic(1.0, 4.0);
  // Distinct grid points strictly inside (a, b).
  std::set<double> picks;
  const double step = 1.0 / 64.0;
  const auto slots = static_cast<std::int64_t>((b - a) / step) - 1;
  if (static_cast<std::int64_t>(breakpoints) > slots) throw DomainError("pwl_convex: too many breakpoints");
  while (picks.size() < breakpoints) picks.insert(a + step * static_cast<double>(rng.uniform_int(1, slots)));
  std::vector<double> xs(picks.begin(), picks.end());

  std::vector<double> slopes(breakpoints + 1);
  slopes[0] = nondecreasing ? rng.dyadic(0.0, 1.0) : rng.dyadic(-3.0, 0.5);
  for (std::size_t k = 1; k <= breakpoints; ++k) slopes[k] = slopes[k - 1] + rng.dyadic(1.0 / 64.0, 1.0);
  return PwlConvexFunction(a, b, std::move(xs), std::move(slopes), rng.dyadic(-2.0, 2.0));
}

MajorizationPair submajorized_pair(Rng& rng, std::size_t n, bool strong, double lo, double hi) {
  if (n == 0) throw DomainError("submajorized_pair: n must be >= 1");
  MajorizationPair p;
  p.y = dyadic_coords(rng, n, lo, hi);
  // Average of four random permutations of y; weights are powers of two so
  // the average is exact.
  p.x.assign(n, 0.0);
  std::vector<std::size_t> perm(n);
  for (int r = 0; r < 4; ++r) {
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) {
      const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i - 1)));
      std::swap(perm[i - 1], perm[j]);
    }
    for (std::size_t i = 0; i < n; ++i) p.x[i] += 0.25 * p.y[perm[i]];
  }
  if (!strong) {
    for (double& v : p.x) v -= rng.dyadic(0.0, 0.5);
  }
  return p;
}

}  // namespace abel::instances
