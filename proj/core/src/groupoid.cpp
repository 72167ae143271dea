#include "sdg/groupoid.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sdg/errors.hpp"

namespace sdg {

const char* to_string(GroupoidKind kind) { return kind == GroupoidKind::Pair ? "pair" : "bundle"; }

GroupoidKind parse_groupoid_kind(std::string_view text) {
  if (text == "pair") return GroupoidKind::Pair;
  if (text == "bundle") return GroupoidKind::Bundle;
  throw InputError("unknown groupoid kind '" + std::string(text) + "'");
}

namespace {

WeilMatrix column(const WeilVector& v) {
  WeilMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

WeilVector flatten(const WeilMatrix& m) { return m.data(); }

void require_square_zero(const WeilElement& e, const char* what) {
  if (!squares_to_zero(e)) throw NilpotencyError(std::string(what) + ": argument does not square to zero");
}

void require_slot(std::size_t i, std::size_t upper, const char* what) {
  if (i < 1 || i > upper)
    throw std::out_of_range(std::string(what) + ": slot " + std::to_string(i) + " outside 1.." + std::to_string(upper));
}

// Insert a zero bit at slot i: maps subsets of the n remaining slots to
// subsets of n+1 slots that avoid slot i.
SlotSet lift(SlotSet s, std::size_t i) {
  const SlotSet low_mask = slot_bit(i) - 1;
  return (s & low_mask) | ((s & ~low_mask) << 1);
}

// Inverse of lift for sets avoiding slot i.
SlotSet drop(SlotSet s, std::size_t i) {
  const SlotSet low_mask = slot_bit(i) - 1;
  return (s & low_mask) | ((s >> 1) & ~low_mask);
}

WeilMatrix zero_like(const WeilMatrix& m) { return WeilMatrix(m.rows(), m.cols()); }

}  // namespace

// ------------------------------------------------------------------ arrows

Arrow identity_arrow(GroupoidKind kind, const WeilVector& point, std::size_t fiber_dim) {
  if (kind == GroupoidKind::Pair) return Arrow{kind, point, point, {}};
  return Arrow{kind, point, point, WeilMatrix::identity(fiber_dim)};
}

Arrow compose(const Arrow& g, const Arrow& h) {
  if (g.kind != h.kind) throw std::invalid_argument("compose: arrows from different groupoids");
  if (!(h.target == g.source)) throw std::invalid_argument("compose: arrows are not composable");
  if (g.kind == GroupoidKind::Pair) return Arrow{g.kind, h.source, g.target, {}};
  return Arrow{g.kind, h.source, g.target, g.element * h.element};
}

Arrow inverse(const Arrow& a) {
  if (a.kind == GroupoidKind::Pair) return Arrow{a.kind, a.target, a.source, {}};
  return Arrow{a.kind, a.target, a.source, matrix_inverse(a.element)};
}

bool is_identity(const Arrow& a) {
  if (!(a.source == a.target)) return false;
  return a.kind == GroupoidKind::Pair || a.element == WeilMatrix::identity(a.element.rows());
}

// --------------------------------------------------------------- Microcube

Microcube::Microcube(ContextPtr context, GroupoidKind kind, std::size_t arity, WeilVector base,
                     std::vector<WeilMatrix> blocks)
    : context_(std::move(context)), kind_(kind), arity_(arity), base_(std::move(base)), blocks_(std::move(blocks)) {
  if (!context_) throw std::invalid_argument("microcube needs a generator context");
  if (arity_ > kMaxArity) throw std::invalid_argument("microcube arity too large");
  if (blocks_.size() != (std::size_t{1} << arity_)) throw InputError("microcube needs 2^arity blocks");
  const auto& origin = blocks_.front();
  for (const auto& b : blocks_)
    if (b.rows() != origin.rows() || b.cols() != origin.cols()) throw InputError("microcube blocks differ in shape");
  if (kind_ == GroupoidKind::Pair) {
    if (origin.cols() != 1 || origin.rows() != base_.size())
      throw InputError("pair microcube blocks must be base-dimension columns");
    if (!(flatten(origin) == base_)) throw InputError("pair microcube: value at the origin must be the source");
  } else {
    if (!origin.square() || origin.rows() == 0) throw InputError("bundle microcube blocks must be square");
    if (!(origin == WeilMatrix::identity(origin.rows())))
      throw InputError("bundle microcube: value at the origin must be the identity");
  }
}

Microcube Microcube::point(ContextPtr context, GroupoidKind kind, WeilVector base, std::size_t fiber_dim) {
  WeilMatrix origin = kind == GroupoidKind::Pair ? column(base) : WeilMatrix::identity(fiber_dim);
  return Microcube(std::move(context), kind, 0, std::move(base), {std::move(origin)});
}

std::size_t Microcube::fiber_dim() const noexcept { return kind_ == GroupoidKind::Bundle ? blocks_.front().rows() : 0; }

namespace {

WeilMatrix sum_table(const std::vector<WeilMatrix>& blocks, std::span<const WeilElement> args) {
  WeilMatrix sum = blocks.front();
  for (SlotSet s = 1; s < blocks.size(); ++s) {
    if (blocks[s].is_zero()) continue;
    WeilElement coeff(1);
    for (std::size_t slot = 1; slot <= args.size() && !coeff.is_zero(); ++slot)
      if (s & slot_bit(slot)) coeff *= args[slot - 1];
    if (!coeff.is_zero()) sum += coeff * blocks[s];
  }
  return sum;
}

}  // namespace

Arrow Microcube::evaluate(std::span<const WeilElement> args) const {
  if (args.size() != arity_)
    throw std::invalid_argument("microcube evaluation: expected " + std::to_string(arity_) + " arguments");
  for (const auto& a : args) require_square_zero(a, "microcube evaluation");
  WeilMatrix value = sum_table(blocks_, args);
  if (kind_ == GroupoidKind::Pair) return Arrow{kind_, base_, flatten(value), {}};
  return Arrow{kind_, base_, base_, std::move(value)};
}

WeilVector Microcube::first_order(std::size_t slot) const {
  require_slot(slot, arity_, "first_order");
  return flatten(blocks_[slot_bit(slot)]);
}

WeilVector Microcube::target_at(std::span<const WeilElement> args) const { return evaluate(args).target; }

Microcube Microcube::substitute(const Substitution& sigma) const {
  std::vector<WeilMatrix> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& b : blocks_) blocks.push_back(sdg::substitute(b, sigma));
  return Microcube(context_, kind_, arity_, sdg::substitute(base_, sigma), std::move(blocks));
}

bool Microcube::is_rational() const {
  auto rational = [](const WeilElement& e) { return e.is_constant(); };
  if (!std::all_of(base_.begin(), base_.end(), rational)) return false;
  for (const auto& b : blocks_)
    if (!std::all_of(b.data().begin(), b.data().end(), rational)) return false;
  return true;
}

// ------------------------------------------------------- cube structure maps

Microcube face(const Microcube& cube, std::size_t i) {
  require_slot(i, cube.arity(), "face");
  const std::size_t n = cube.arity() - 1;
  std::vector<WeilMatrix> blocks;
  blocks.reserve(std::size_t{1} << n);
  for (SlotSet s = 0; s < (SlotSet{1} << n); ++s) blocks.push_back(cube.block(lift(s, i)));
  return Microcube(cube.context(), cube.kind(), n, cube.base(), std::move(blocks));
}

Microcube degeneracy(const Microcube& cube, std::size_t i) {
  require_slot(i, cube.arity() + 1, "degeneracy");
  const std::size_t n = cube.arity() + 1;
  if (n > kMaxArity) throw std::invalid_argument("degeneracy: arity too large");
  std::vector<WeilMatrix> blocks;
  blocks.reserve(std::size_t{1} << n);
  for (SlotSet s = 0; s < (SlotSet{1} << n); ++s)
    blocks.push_back((s & slot_bit(i)) ? zero_like(cube.block(0)) : cube.block(drop(s, i)));
  return Microcube(cube.context(), cube.kind(), n, cube.base(), std::move(blocks));
}

Microcube shifted_face(const Microcube& cube, std::size_t i, const WeilElement& e) {
  require_slot(i, cube.arity(), "shifted_face");
  require_square_zero(e, "shifted_face");
  if (e.context() != 0 && e.context() != cube.context()->id())
    throw ContextError("shifted_face: parameter from another context");
  const std::size_t n = cube.arity() - 1;
  std::vector<WeilMatrix> blocks;
  blocks.reserve(std::size_t{1} << n);
  for (SlotSet s = 0; s < (SlotSet{1} << n); ++s) {
    const SlotSet lifted = lift(s, i);
    blocks.push_back(cube.block(lifted) + e * cube.block(lifted | slot_bit(i)));
  }
  if (cube.kind() == GroupoidKind::Pair) {
    // Precomposing with gamma(0..e..0)^{-1} only moves the source.
    WeilVector source = flatten(blocks.front());
    return Microcube(cube.context(), cube.kind(), n, std::move(source), std::move(blocks));
  }
  const WeilMatrix correction = matrix_inverse(blocks.front());
  for (auto& b : blocks) b = b * correction;
  return Microcube(cube.context(), cube.kind(), n, cube.base(), std::move(blocks));
}

Microcube axis(const Microcube& cube, std::size_t i) {
  require_slot(i, cube.arity(), "axis");
  return Microcube(cube.context(), cube.kind(), 1, cube.base(), {cube.block(0), cube.block(slot_bit(i))});
}

Microcube scale_axis(const Microcube& cube, std::size_t i, const Rational& a) {
  require_slot(i, cube.arity(), "scale_axis");
  std::vector<WeilMatrix> blocks = cube.blocks();
  for (SlotSet s = 0; s < blocks.size(); ++s)
    if (s & slot_bit(i)) blocks[s] *= a;
  return Microcube(cube.context(), cube.kind(), cube.arity(), cube.base(), std::move(blocks));
}

namespace {

void require_permutation(std::span<const std::size_t> sigma, std::size_t n) {
  if (sigma.size() != n) throw std::invalid_argument("permutation has wrong length");
  std::vector<bool> seen(n + 1, false);
  for (auto v : sigma) {
    if (v < 1 || v > n || seen[v]) throw std::invalid_argument("not a permutation of 1..n");
    seen[v] = true;
  }
}

}  // namespace

Microcube permute(const Microcube& cube, std::span<const std::size_t> sigma) {
  const std::size_t n = cube.arity();
  require_permutation(sigma, n);
  std::vector<WeilMatrix> blocks(cube.blocks().size());
  for (SlotSet s = 0; s < blocks.size(); ++s) {
    SlotSet image = 0;
    for (std::size_t slot = 1; slot <= n; ++slot)
      if (s & slot_bit(slot)) image |= slot_bit(sigma[slot - 1]);
    blocks[image] = cube.block(s);
  }
  return Microcube(cube.context(), cube.kind(), n, cube.base(), std::move(blocks));
}

int permutation_sign(std::span<const std::size_t> sigma) {
  int sign = 1;
  for (std::size_t a = 0; a < sigma.size(); ++a)
    for (std::size_t b = a + 1; b < sigma.size(); ++b)
      if (sigma[a] > sigma[b]) sign = -sign;
  return sign;
}

Microcube tabulate(const ContextPtr& context, GroupoidKind kind, std::size_t arity, std::size_t fiber_dim,
                   const std::function<Arrow(std::span<const WeilElement>)>& fn) {
  const auto gens = context->allocate(arity);
  WeilVector args;
  for (const auto& g : gens) args.push_back(WeilElement::generator(g));
  const Arrow value = fn(args);
  if (value.kind != kind) throw std::invalid_argument("tabulate: arrow of the wrong groupoid");

  for (const auto& x : value.source) {
    const auto parts = expand_along(x, gens);
    for (std::size_t s = 1; s < parts.size(); ++s)
      if (!parts[s].is_zero()) throw std::invalid_argument("tabulate: source is not constant");
  }
  const WeilMatrix flat = kind == GroupoidKind::Pair ? column(value.target) : value.element;
  if (kind == GroupoidKind::Bundle && flat.rows() != fiber_dim)
    throw std::invalid_argument("tabulate: fiber dimension mismatch");
  std::vector<WeilMatrix> blocks(std::size_t{1} << arity, WeilMatrix(flat.rows(), flat.cols()));
  for (std::size_t e = 0; e < flat.data().size(); ++e) {
    const auto parts = expand_along(flat.data()[e], gens);
    for (std::size_t s = 0; s < parts.size(); ++s) blocks[s].data()[e] = parts[s];
  }
  return Microcube(context, kind, arity, value.source, std::move(blocks));
}

// --------------------------------------------------------------------- star

Microcube CubeFamily::at(const WeilElement& d) const { return cube.substitute({{parameter, d}}); }

Microcube star(const CubeFamily& zeta, const Microcube& t) {
  if (zeta.cube.arity() != 1 || t.arity() != 1) throw std::invalid_argument("star: expects 1-cubes");
  if (zeta.cube.kind() != t.kind()) throw std::invalid_argument("star: cubes from different groupoids");
  const WeilElement p = WeilElement::generator(zeta.parameter);
  const WeilElement args[] = {p};
  if (!(zeta.cube.base() == t.target_at(args)))
    throw std::invalid_argument("star: base of zeta(d) is not the target of t_d");

  // zeta(p)'s slot block splits as u0 + p u1.
  const WeilMatrix& slot_block = zeta.cube.block(1);
  WeilMatrix u0(slot_block.rows(), slot_block.cols());
  WeilMatrix u1(slot_block.rows(), slot_block.cols());
  const GeneratorId param[] = {zeta.parameter};
  for (std::size_t e = 0; e < slot_block.data().size(); ++e) {
    const auto parts = expand_along(slot_block.data()[e], param);
    u0.data()[e] = parts[0];
    u1.data()[e] = parts[1];
  }

  std::vector<WeilMatrix> blocks(4);
  blocks[0] = t.block(0);
  blocks[slot_bit(1)] = t.block(1);
  blocks[slot_bit(2)] = u0;
  if (t.kind() == GroupoidKind::Pair) {
    blocks[slot_bit(1) | slot_bit(2)] = u1;
  } else {
    // (I + d2 (u0 + d1 u1)) (I + d1 V)
    blocks[slot_bit(1) | slot_bit(2)] = u1 + u0 * t.block(1);
  }
  return Microcube(t.context(), t.kind(), 2, t.base(), std::move(blocks));
}

// ---------------------------------------------------------- tangent vectors

Arrow tangent_eval(const TangentVector& t, const WeilElement& w) {
  if (w.constant_term() != 0) throw NilpotencyError("tangent_eval: argument has a nonzero constant term");
  require_square_zero(w, "tangent_eval");
  if (!t.value.square()) throw std::invalid_argument("tangent_eval: value must be a square matrix");
  WeilMatrix g = WeilMatrix::identity(t.value.rows()) + w * t.value;
  return Arrow{GroupoidKind::Bundle, t.base, t.base, std::move(g)};
}

namespace {
void require_same_fiber(const TangentVector& a, const TangentVector& b, const char* what) {
  if (!(a.base == b.base)) throw std::invalid_argument(std::string(what) + ": tangent vectors at different bases");
  if (a.value.rows() != b.value.rows() || a.value.cols() != b.value.cols())
    throw std::invalid_argument(std::string(what) + ": fiber dimensions differ");
}
}  // namespace

TangentVector tangent_add(const TangentVector& a, const TangentVector& b) {
  require_same_fiber(a, b, "tangent_add");
  return TangentVector{a.base, a.value + b.value};
}

TangentVector tangent_scale(const Rational& s, const TangentVector& t) { return TangentVector{t.base, s * t.value}; }

TangentVector bracket(GeneratorContext& context, const TangentVector& t1, const TangentVector& t2) {
  require_same_fiber(t1, t2, "bracket");
  const auto d1 = context.allocate();
  const auto d2 = context.allocate();
  const WeilElement e1 = WeilElement::generator(d1);
  const WeilElement e2 = WeilElement::generator(d2);
  const Arrow word = compose(tangent_eval(t2, -e2),
                             compose(tangent_eval(t1, -e1), compose(tangent_eval(t2, e2), tangent_eval(t1, e1))));
  const WeilMatrix deviation = word.element - WeilMatrix::identity(word.element.rows());
  return TangentVector{t1.base, factor_top(deviation, Monomial::of({d1.index, d2.index}))};
}

TangentVector bracket(const TangentVector& t1, const TangentVector& t2) {
  GeneratorContext local;
  return bracket(local, t1, t2);
}

}  // namespace sdg
