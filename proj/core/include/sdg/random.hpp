#pragma once

// Deterministic instance generation. Every trial of every check draws from
// its own stream, derived from (seed, check name, trial index), so results do
// not depend on execution order.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "sdg/groupoid.hpp"
#include "sdg/polynomial.hpp"

namespace sdg {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Stream seed for one trial of one named check.
  static std::uint64_t derive(std::uint64_t seed, std::string_view label, std::uint64_t trial);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  long between(long lo, long hi);
  bool coin() { return below(2) == 1; }

  /// p/q with |p| <= bound and 1 <= q <= 3.
  Rational rational(long bound);
  Rational nonzero_rational(long bound);
  Rational positive_rational(long bound);

  /// Uniform 1-based permutation of 1..n.
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

RationalMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound);
WeilVector random_point(Rng& rng, std::size_t dim, long bound);
TangentVector random_tangent(Rng& rng, std::size_t base_dim, std::size_t fiber_dim, long bound);

/// Coefficients within `bound`; the identity at the origin by construction.
Microcube random_microcube(Rng& rng, const ContextPtr& context, GroupoidKind kind, std::size_t arity,
                           std::size_t base_dim, std::size_t fiber_dim, long bound);
Microcube random_microcube(std::uint64_t seed, const ContextPtr& context, GroupoidKind kind, std::size_t arity,
                           std::size_t base_dim, std::size_t fiber_dim, long bound);

/// Polynomial in `variables` unknowns of total degree <= max_degree.
Polynomial random_polynomial(Rng& rng, std::size_t variables, int max_degree, long bound);
MatrixPolynomial random_matrix_polynomial(Rng& rng, std::size_t rows, std::size_t cols, std::size_t variables,
                                          int max_degree, long bound);

/// T(x) = diag(1 + c_r x_{r mod m}^2) U(x) with U unipotent upper triangular
/// and affine off-diagonal entries: invertible at every rational point and at
/// every Weil point over one.
MatrixPolynomial random_gauge_field(Rng& rng, std::size_t base_dim, std::size_t fiber_dim, long bound);

/// Square-zero element built from fresh ambient generators of `context`,
/// of one of the shapes a g1, a g1 g2, a g1 + b g1 g2.
WeilElement random_infinitesimal(Rng& rng, GeneratorContext& context, long bound);

}  // namespace sdg
