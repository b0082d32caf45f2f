#include "abel/random.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "abel/error.hpp"

namespace abel {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return splitmix64(h ^ c);
}

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw DomainError("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(bits());
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t r = bits();
  while (r >= limit) r = bits();
  return lo + static_cast<std::int64_t>(r % span);
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::dyadic(double lo, double hi, int bits) {
  const double step = std::ldexp(1.0, -bits);
  const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step));
  if (count <= 0) return lo;
  return lo + step * static_cast<double>(uniform_int(0, count - 1));
}

Matrix random_symmetric(Rng& rng, std::size_t n, double scale) {
  const auto m = static_cast<Eigen::Index>(n);
  Matrix a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      a(i, j) = rng.uniform(-scale, scale);
      a(j, i) = a(i, j);
    }
  }
  return a;
}

Matrix random_orthogonal(Rng& rng, std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  Matrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < m; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

Matrix random_psd(Rng& rng, std::size_t n, double scale) {
  const Matrix q = random_orthogonal(rng, n);
  Eigen::VectorXd l(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < l.size(); ++i) l(i) = rng.uniform(0.0, scale);
  Matrix a = q * l.asDiagonal() * q.transpose();
  return 0.5 * (a + a.transpose());
}

Element random_element(Rng& rng, const Shape& shape, double scale) {
  switch (shape.kind) {
    case Kind::scalar:
      return Element::scalar(rng.uniform(-scale, scale));
    case Kind::vector: {
      std::vector<double> v(shape.dim);
      for (double& x : v) x = rng.uniform(-scale, scale);
      return Element::vector(std::move(v));
    }
    case Kind::symmetric_matrix:
      return Element::matrix(random_symmetric(rng, shape.dim, scale));
  }
  throw DomainError("unknown element kind");
}

Element random_positive(Rng& rng, const Shape& shape, double scale) {
  switch (shape.kind) {
    case Kind::scalar:
      return Element::scalar(rng.uniform(0.0, scale));
    case Kind::vector: {
      std::vector<double> v(shape.dim);
      for (double& x : v) x = rng.uniform(0.0, scale);
      return Element::vector(std::move(v));
    }
    case Kind::symmetric_matrix:
      return Element::matrix(random_psd(rng, shape.dim, scale));
  }
  throw DomainError("unknown element kind");
}

}  // namespace abel
