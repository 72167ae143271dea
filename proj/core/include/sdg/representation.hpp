#pragma once

// Representations of the groupoid on the fiber Lie algebra gl(k). A fiber
// element X is handled as vec(X) (row-major, length k^2) and a representation
// sends each arrow to an invertible k^2 x k^2 Weil matrix.
//
//   trivial  every arrow acts as the identity (either groupoid)
//   adjoint  g acts by X -> g X g^{-1} (bundle groupoid only)
//   gauge    (x -> y) acts by X -> T(y) T(x)^{-1} X (pair groupoid only)

#include <optional>
#include <string>
#include <string_view>

#include "sdg/groupoid.hpp"
#include "sdg/polynomial.hpp"

namespace sdg {

enum class RepresentationKind { Trivial, Adjoint, Gauge };

const char* to_string(RepresentationKind kind);
RepresentationKind parse_representation_kind(std::string_view text);

class Representation {
 public:
  static Representation trivial(std::size_t fiber_dim);
  static Representation adjoint(std::size_t fiber_dim);
  /// `field` is k x k, polynomial in the base coordinates, and must be
  /// invertible at every point where it is evaluated.
  static Representation gauge(MatrixPolynomial field);

  RepresentationKind kind() const noexcept { return kind_; }
  std::size_t fiber_dim() const noexcept { return fiber_dim_; }
  /// Gauge field; empty unless kind() == Gauge.
  const MatrixPolynomial& gauge_field() const noexcept { return field_; }

  bool supports(GroupoidKind groupoid) const noexcept;

  /// rho(a) as a k^2 x k^2 matrix on vec(X). Throws std::invalid_argument on
  /// a groupoid mismatch.
  WeilMatrix transport(const Arrow& a) const;
  /// rho(a)(X).
  WeilMatrix act(const Arrow& a, const WeilMatrix& x) const;
  /// rho(a)^{-1}(X), inverting the transport matrix.
  WeilMatrix act_inverse(const Arrow& a, const WeilMatrix& x) const;

  std::string describe() const;

 private:
  Representation(RepresentationKind kind, std::size_t fiber_dim, MatrixPolynomial field)
      : kind_(kind), fiber_dim_(fiber_dim), field_(std::move(field)) {}

  RepresentationKind kind_;
  std::size_t fiber_dim_;
  MatrixPolynomial field_;
};

WeilVector vectorize(const WeilMatrix& x);
WeilMatrix unvectorize(const WeilVector& v, std::size_t rows, std::size_t cols);

/// Result of comparing two sides of an identity.
struct Comparison {
  bool equal = true;
  WeilMatrix lhs;
  WeilMatrix rhs;
  std::string detail;
};

/// (rho(gamma_i)_{d_i})^{-1} o (rho((gamma^i_{d_i})_j)_{d_j})^{-1} versus
/// (rho(gamma_j)_{d_j})^{-1} o (rho((gamma^j_{d_j})_{i-1})_{d_i})^{-1}, for
/// 1 <= j < i <= arity, on fresh d_i, d_j. Both sides are k^2 x k^2 matrices.
Comparison check_lemma43(const Representation& rho, const Microcube& cube, std::size_t i, std::size_t j);

/// Transport respects the star decomposition: rho applied to (zeta * t) at
/// (d1, d2) equals rho(zeta(d1))_{d2} composed with rho(t)_{d1}, and both
/// equal rho of the composite arrow computed directly.
Comparison check_star_homomorphism(const Representation& rho, const CubeFamily& zeta, const Microcube& t);

}  // namespace sdg
