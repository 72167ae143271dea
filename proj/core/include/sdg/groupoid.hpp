#pragma once

// Microcubes on two concrete groupoids over a rational affine base M = Q^m:
//
//  * Pair: G = M x M. An arrow is (source, target); a microcube is a map
//    D^n -> M with constant source and is stored by its target table.
//  * Bundle: G = M x GL(k) with source = target. An arrow is (base, g); a
//    microcube is a map D^n -> GL(k) with value I at the origin.
//
// Composition is written in function order: compose(g, h) means "h first,
// then g", and requires target(h) == source(g).
//
// A microcube over D^n is stored as 2^n coefficient blocks indexed by subsets
// of its slots; slot i (1-based) is bit i-1 of a SlotSet. Blocks may carry
// ambient generators, which is how the parametrized cubes gamma^i_e arise.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sdg/weil.hpp"

namespace sdg {

enum class GroupoidKind { Pair, Bundle };

const char* to_string(GroupoidKind kind);
GroupoidKind parse_groupoid_kind(std::string_view text);

struct Arrow {
  GroupoidKind kind = GroupoidKind::Pair;
  WeilVector source;
  WeilVector target;
  WeilMatrix element;  // Bundle only; empty for Pair.

  friend bool operator==(const Arrow&, const Arrow&) = default;
};

Arrow identity_arrow(GroupoidKind kind, const WeilVector& point, std::size_t fiber_dim);
/// g after h. Throws std::invalid_argument if the arrows are not composable.
Arrow compose(const Arrow& g, const Arrow& h);
Arrow inverse(const Arrow& a);
bool is_identity(const Arrow& a);

using SlotSet = std::uint32_t;
inline constexpr std::size_t kMaxArity = 12;

constexpr SlotSet slot_bit(std::size_t slot) { return SlotSet{1} << (slot - 1); }

class Microcube {
 public:
  /// Validates the microcube invariants (block count and shapes, identity at
  /// the origin). `blocks[S]` is the coefficient of the product of the slot
  /// variables in S.
  Microcube(ContextPtr context, GroupoidKind kind, std::size_t arity, WeilVector base, std::vector<WeilMatrix> blocks);

  /// Arity-0 cube: the identity arrow at `base`.
  static Microcube point(ContextPtr context, GroupoidKind kind, WeilVector base, std::size_t fiber_dim);

  const ContextPtr& context() const noexcept { return context_; }
  GroupoidKind kind() const noexcept { return kind_; }
  std::size_t arity() const noexcept { return arity_; }
  /// pi_n: the source point (constant over D^n).
  const WeilVector& base() const noexcept { return base_; }
  std::size_t base_dim() const noexcept { return base_.size(); }
  /// k for bundle cubes; 0 for pair cubes.
  std::size_t fiber_dim() const noexcept;

  const WeilMatrix& block(SlotSet s) const { return blocks_.at(s); }
  const std::vector<WeilMatrix>& blocks() const noexcept { return blocks_; }

  /// gamma(args...). Each argument must square to zero.
  Arrow evaluate(std::span<const WeilElement> args) const;

  /// First-order data along slot i: the target displacement (pair, m
  /// entries) or the row-major entries of the Lie-algebra block (bundle, k^2
  /// entries).
  WeilVector first_order(std::size_t slot) const;

  /// a_n(gamma) at args: the target point.
  WeilVector target_at(std::span<const WeilElement> args) const;

  Microcube substitute(const Substitution& sigma) const;

  /// True when no block involves a generator.
  bool is_rational() const;

  friend bool operator==(const Microcube& a, const Microcube& b) {
    return a.kind_ == b.kind_ && a.arity_ == b.arity_ && a.base_ == b.base_ && a.blocks_ == b.blocks_;
  }

 private:
  ContextPtr context_;
  GroupoidKind kind_;
  std::size_t arity_;
  WeilVector base_;
  std::vector<WeilMatrix> blocks_;
};

/// d_i: set slot i to zero. 1 <= i <= arity.
Microcube face(const Microcube& cube, std::size_t i);
/// s_i: insert an ignored slot at position i. 1 <= i <= arity + 1.
Microcube degeneracy(const Microcube& cube, std::size_t i);
/// gamma^i_e(d) = gamma(d_1..d_{i-1}, e, d_i..d_n) gamma(0..e..0)^{-1}.
Microcube shifted_face(const Microcube& cube, std::size_t i, const WeilElement& e);
/// gamma_i(d) = gamma(0..d..0) as a 1-cube.
Microcube axis(const Microcube& cube, std::size_t i);
/// a._i gamma: rescale slot i by a.
Microcube scale_axis(const Microcube& cube, std::size_t i, const Rational& a);
/// gamma o D^sigma, (gamma o D^sigma)(d) = gamma(d_sigma(1), ..., d_sigma(n)).
/// `sigma` is a 1-based permutation of 1..n.
Microcube permute(const Microcube& cube, std::span<const std::size_t> sigma);

int permutation_sign(std::span<const std::size_t> sigma);

/// Builds a cube from an arrow-valued function of n fresh generators by
/// Kock-Lawvere expansion. The function must give a constant source and the
/// identity at the origin.
Microcube tabulate(const ContextPtr& context, GroupoidKind kind, std::size_t arity, std::size_t fiber_dim,
                   const std::function<Arrow(std::span<const WeilElement>)>& fn);

/// One-parameter family d |-> zeta(d) of 1-cubes: `cube` depends on the
/// ambient generator `parameter`.
struct CubeFamily {
  GeneratorId parameter;
  Microcube cube;

  Microcube at(const WeilElement& d) const;
};

/// (zeta * t)(d1, d2) = zeta(d1)_{d2} t_{d1}. Requires the base of zeta(d) to
/// be the target of t_d.
Microcube star(const CubeFamily& zeta, const Microcube& t);

/// Element of the Lie algebra fiber at `base`, evaluated as I + w X.
struct TangentVector {
  WeilVector base;
  WeilMatrix value;

  friend bool operator==(const TangentVector&, const TangentVector&) = default;
};

/// t_w = I + w X. Requires w^2 = 0 and no constant term.
Arrow tangent_eval(const TangentVector& t, const WeilElement& w);
TangentVector tangent_add(const TangentVector& a, const TangentVector& b);
TangentVector tangent_scale(const Rational& s, const TangentVector& t);
/// [t1, t2] extracted from (t2)_{-d2} (t1)_{-d1} (t2)_{d2} (t1)_{d1} = I + d1 d2 [t1,t2].
TangentVector bracket(GeneratorContext& context, const TangentVector& t1, const TangentVector& t2);
TangentVector bracket(const TangentVector& t1, const TangentVector& t2);

}  // namespace sdg
