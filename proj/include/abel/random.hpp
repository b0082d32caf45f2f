#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "abel/element.hpp"

namespace abel {

/// SplitMix64 finalizer applied to x + golden-ratio increment.
std::uint64_t splitmix64(std::uint64_t x);

/// Counter-based seed derivation: a pure function of its arguments.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

/// Top 53 bits of `bits` as a double in [0, 1).
double unit_interval(std::uint64_t bits);

/// Seeded source for the random instance generators. Uniform draws are built
/// from raw engine output so they do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  double uniform() { return unit_interval(engine_()); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Standard normal via Box-Muller on two uniforms.
  double normal();
  bool bernoulli(double p) { return uniform() < p; }
  /// Multiple of 2^-bits in [lo, hi); keeps sums exact in binary arithmetic.
  double dyadic(double lo, double hi, int bits = 6);

 private:
  std::mt19937_64 engine_;
};

/// Entries uniform in [-scale, scale]; matrices symmetric.
Element random_element(Rng& rng, const Shape& shape, double scale = 1.0);
/// Entries in [0, scale] for scalars and vectors, random PSD for matrices.
Element random_positive(Rng& rng, const Shape& shape, double scale = 1.0);

/// Haar-like orthogonal matrix from the QR factorization of a Gaussian matrix.
Matrix random_orthogonal(Rng& rng, std::size_t n);
/// Q diag(l) Q^T with l_i uniform in [0, scale].
Matrix random_psd(Rng& rng, std::size_t n, double scale = 1.0);
/// Symmetric matrix with entries uniform in [-scale, scale].
Matrix random_symmetric(Rng& rng, std::size_t n, double scale = 1.0);

}  // namespace abel
