#include "sdg/random.hpp"

#include <numeric>
#include <stdexcept>

namespace sdg {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t Rng::derive(std::uint64_t seed, std::string_view label, std::uint64_t trial) {
  return splitmix64(splitmix64(splitmix64(seed) ^ fnv1a(label)) ^ trial);
}

// Rejection sampling instead of std::uniform_int_distribution, whose output
// differs between standard libraries.
std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

long Rng::between(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("Rng::between: empty range");
  return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Rational Rng::rational(long bound) {
  Rational q(between(-bound, bound), between(1, 3));
  q.canonicalize();
  return q;
}

Rational Rng::nonzero_rational(long bound) {
  Rational q;
  do {
    q = rational(bound);
  } while (q == 0);
  return q;
}

Rational Rng::positive_rational(long bound) {
  Rational q(between(1, std::max(1L, bound)), between(1, 3));
  q.canonicalize();
  return q;
}

std::vector<std::size_t> Rng::permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{1});
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[below(i)]);
  return p;
}

RationalMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  RationalMatrix m(rows, cols);
  for (auto& x : m.data()) x = rng.rational(bound);
  return m;
}

WeilVector random_point(Rng& rng, std::size_t dim, long bound) {
  WeilVector p;
  for (std::size_t i = 0; i < dim; ++i) p.emplace_back(rng.rational(bound));
  return p;
}

TangentVector random_tangent(Rng& rng, std::size_t base_dim, std::size_t fiber_dim, long bound) {
  return TangentVector{random_point(rng, base_dim, bound), to_weil(random_matrix(rng, fiber_dim, fiber_dim, bound))};
}

Microcube random_microcube(Rng& rng, const ContextPtr& context, GroupoidKind kind, std::size_t arity,
                           std::size_t base_dim, std::size_t fiber_dim, long bound) {
  WeilVector base = random_point(rng, base_dim, bound);
  std::vector<WeilMatrix> blocks;
  if (kind == GroupoidKind::Pair) {
    WeilMatrix origin(base_dim, 1);
    origin.data() = base;
    blocks.push_back(origin);
    for (SlotSet s = 1; s < (SlotSet{1} << arity); ++s)
      blocks.push_back(to_weil(random_matrix(rng, base_dim, 1, bound)));
  } else {
    blocks.push_back(WeilMatrix::identity(fiber_dim));
    for (SlotSet s = 1; s < (SlotSet{1} << arity); ++s)
      blocks.push_back(to_weil(random_matrix(rng, fiber_dim, fiber_dim, bound)));
  }
  return Microcube(context, kind, arity, std::move(base), std::move(blocks));
}

Microcube random_microcube(std::uint64_t seed, const ContextPtr& context, GroupoidKind kind, std::size_t arity,
                           std::size_t base_dim, std::size_t fiber_dim, long bound) {
  Rng rng(seed);
  return random_microcube(rng, context, kind, arity, base_dim, fiber_dim, bound);
}

namespace {

void exponents_up_to(std::size_t variables, int max_degree, Polynomial::Exponents& current, std::size_t var,
                     int remaining, std::vector<Polynomial::Exponents>& out) {
  if (var == variables) {
    out.push_back(current);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    current[var] = static_cast<std::uint32_t>(e);
    exponents_up_to(variables, max_degree, current, var + 1, remaining - e, out);
  }
  current[var] = 0;
}

}  // namespace

Polynomial random_polynomial(Rng& rng, std::size_t variables, int max_degree, long bound) {
  std::vector<Polynomial::Exponents> monomials;
  Polynomial::Exponents current(variables, 0);
  exponents_up_to(variables, max_degree, current, 0, max_degree, monomials);
  Polynomial p(variables);
  for (const auto& e : monomials)
    if (rng.coin()) p.add_term(e, rng.rational(bound));
  return p;
}

MatrixPolynomial random_matrix_polynomial(Rng& rng, std::size_t rows, std::size_t cols, std::size_t variables,
                                          int max_degree, long bound) {
  MatrixPolynomial m(rows, cols, variables);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_polynomial(rng, variables, max_degree, bound);
  return m;
}

MatrixPolynomial random_gauge_field(Rng& rng, std::size_t base_dim, std::size_t fiber_dim, long bound) {
  if (base_dim == 0) throw std::invalid_argument("gauge field needs a base coordinate");
  MatrixPolynomial diag(fiber_dim, fiber_dim, base_dim);
  MatrixPolynomial unipotent(fiber_dim, fiber_dim, base_dim);
  for (std::size_t r = 0; r < fiber_dim; ++r) {
    const auto x = Polynomial::variable(base_dim, r % base_dim);
    diag(r, r) = Polynomial::constant(base_dim, 1) + x * x * rng.positive_rational(bound);
    unipotent(r, r) = Polynomial::constant(base_dim, 1);
    for (std::size_t c = r + 1; c < fiber_dim; ++c) unipotent(r, c) = random_polynomial(rng, base_dim, 1, bound);
  }
  MatrixPolynomial out(fiber_dim, fiber_dim, base_dim);
  for (std::size_t r = 0; r < fiber_dim; ++r)
    for (std::size_t c = 0; c < fiber_dim; ++c) out(r, c) = diag(r, r) * unipotent(r, c);
  return out;
}

WeilElement random_infinitesimal(Rng& rng, GeneratorContext& context, long bound) {
  const WeilElement g1 = WeilElement::generator(context.allocate());
  switch (rng.below(3)) {
    case 0:
      return rng.nonzero_rational(bound) * g1;
    case 1: {
      const WeilElement g2 = WeilElement::generator(context.allocate());
      return rng.nonzero_rational(bound) * g1 * g2;
    }
    default: {
      const WeilElement g2 = WeilElement::generator(context.allocate());
      return rng.nonzero_rational(bound) * g1 + rng.nonzero_rational(bound) * g1 * g2;
    }
  }
}

}  // namespace sdg
