#pragma once

// Exact arithmetic in the rational algebra generated by finitely many
// square-zero infinitesimals d (d*d = 0), plus matrices over it.
//
// A monomial is a set of generators, so multiplication annihilates whenever
// two monomials share a generator. Generators come from a GeneratorContext;
// one context serves a whole computation and hands out fresh generators on
// demand, so nested operator evaluations never capture each other's
// infinitesimals.

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sdg/rational.hpp"

namespace sdg {

inline constexpr std::size_t kMaxGenerators = 256;

struct GeneratorId {
  std::uint64_t context = 0;
  std::uint32_t index = 0;

  auto operator<=>(const GeneratorId&) const = default;
};

/// Square-free product of generators, stored as a bit set over generator
/// indices of one context. The empty monomial is the unit.
class Monomial {
 public:
  constexpr Monomial() = default;
  static Monomial of(std::initializer_list<std::uint32_t> indices);
  static Monomial of(std::span<const GeneratorId> gens);
  static Monomial single(std::uint32_t index);

  bool empty() const noexcept;
  int degree() const noexcept;
  bool contains(std::uint32_t index) const noexcept;
  bool intersects(const Monomial& o) const noexcept;
  bool includes(const Monomial& o) const noexcept;
  std::uint32_t max_index() const noexcept;

  Monomial operator|(const Monomial& o) const noexcept;
  Monomial without(const Monomial& o) const noexcept;
  void insert(std::uint32_t index);
  void erase(std::uint32_t index) noexcept;

  /// Sorted ascending.
  std::vector<std::uint32_t> indices() const;

  auto operator<=>(const Monomial&) const = default;

 private:
  std::array<std::uint64_t, kMaxGenerators / 64> words_{};
};

/// Hands out generators. Allocation is serialized; a context never reuses an
/// index.
class GeneratorContext {
 public:
  GeneratorContext();
  GeneratorContext(const GeneratorContext&) = delete;
  GeneratorContext& operator=(const GeneratorContext&) = delete;

  std::uint64_t id() const noexcept { return id_; }
  std::size_t allocated() const;

  GeneratorId allocate();
  std::vector<GeneratorId> allocate(std::size_t count);

  /// Marks indices [0, index] as taken, so later allocations stay fresh with
  /// respect to generators read from a file.
  void reserve_through(std::uint32_t index);

 private:
  std::uint64_t id_;
  mutable std::mutex mutex_;
  std::uint32_t next_ = 0;
};

using ContextPtr = std::shared_ptr<GeneratorContext>;

/// Element of the Weil algebra: a finite map Monomial -> nonzero Rational.
/// Terms are kept sorted by monomial with zero coefficients pruned, so
/// structural equality is algebraic equality.
class WeilElement {
 public:
  using Term = std::pair<Monomial, Rational>;

  WeilElement() = default;
  WeilElement(const Rational& c);                            // NOLINT(google-explicit-constructor)
  WeilElement(long c);                                       // NOLINT(google-explicit-constructor)
  WeilElement(int c) : WeilElement(static_cast<long>(c)) {}  // NOLINT

  static WeilElement generator(GeneratorId g);
  static WeilElement term(std::uint64_t context, Monomial m, const Rational& c);
  /// Canonicalizes: merges duplicate monomials and drops zeros.
  static WeilElement from_terms(std::uint64_t context, std::vector<Term> terms);

  std::span<const Term> terms() const noexcept { return terms_; }
  /// Id of the context the generators belong to; 0 when the element is a
  /// plain rational.
  std::uint64_t context() const noexcept { return context_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  /// Union of all monomials in the support.
  Monomial support() const;

  WeilElement& operator+=(const WeilElement& o);
  WeilElement& operator-=(const WeilElement& o);
  WeilElement& operator*=(const WeilElement& o);
  WeilElement& operator*=(const Rational& s);

  friend WeilElement operator+(WeilElement a, const WeilElement& b) { return a += b; }
  friend WeilElement operator-(WeilElement a, const WeilElement& b) { return a -= b; }
  friend WeilElement operator*(const WeilElement& a, const WeilElement& b);
  friend WeilElement operator*(WeilElement a, const Rational& s) { return a *= s; }
  friend WeilElement operator*(const Rational& s, WeilElement a) { return a *= s; }
  friend WeilElement operator*(int s, WeilElement a) { return a *= Rational(s); }
  friend WeilElement operator*(WeilElement a, int s) { return a *= Rational(s); }
  friend WeilElement operator-(WeilElement a);
  friend bool operator==(const WeilElement& a, const WeilElement& b) noexcept {
    return a.terms_ == b.terms_ && (a.terms_.empty() || a.is_constant() || a.context_ == b.context_);
  }

  std::string to_string() const;

 private:
  static std::uint64_t merge_context(std::uint64_t a, std::uint64_t b);
  void normalize_context() noexcept;

  std::uint64_t context_ = 0;
  std::vector<Term> terms_;
};

enum class RingOp { Add, Sub, Mul };

/// The algebra operations as a single entry point; `scale` is operator*.
WeilElement ring_combine(const WeilElement& a, const WeilElement& b, RingOp op);

using WeilMatrix = Matrix<WeilElement>;
using WeilVector = std::vector<WeilElement>;

/// Images of generators under an algebra morphism; unmapped generators are
/// fixed. Every image must square to zero.
using Substitution = std::map<GeneratorId, WeilElement>;

WeilElement substitute(const WeilElement& a, const Substitution& sigma);
WeilMatrix substitute(const WeilMatrix& a, const Substitution& sigma);
WeilVector substitute(const WeilVector& a, const Substitution& sigma);

/// Returns c with a == c * m, where c involves none of the generators of m.
/// Throws ResidueError when some monomial of a is not divisible by m.
WeilElement factor_top(const WeilElement& a, const Monomial& m);
WeilMatrix factor_top(const WeilMatrix& a, const Monomial& m);

/// Kock-Lawvere expansion along `gens`: result[mask] is the coefficient of the
/// product of gens selected by mask (bit i <-> gens[i]); coefficients are free
/// of those generators.
std::vector<WeilElement> expand_along(const WeilElement& a, std::span<const GeneratorId> gens);

/// Product of the given generators as an element.
WeilElement product_of(std::span<const GeneratorId> gens);

bool squares_to_zero(const WeilElement& a);

/// Throws InputError if a is not a plain rational.
Rational to_rational(const WeilElement& a);
RationalMatrix to_rational(const WeilMatrix& a);
WeilMatrix to_weil(const RationalMatrix& a);

RationalMatrix constant_part(const WeilMatrix& a);

/// Exact two-sided inverse. The constant part is inverted over the rationals
/// and the nilpotent correction summed as a finite geometric series.
/// Throws SingularMatrixError when the constant part is singular.
WeilMatrix matrix_inverse(const WeilMatrix& a);

/// Kronecker product, row-major convention: vec(A X B) = (A kron B^T) vec(X).
WeilMatrix kronecker(const WeilMatrix& a, const WeilMatrix& b);
WeilMatrix transpose(const WeilMatrix& a);

}  // namespace sdg
