#pragma once

#include <gtest/gtest.h>

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "sdg/groupoid.hpp"
#include "sdg/rational.hpp"
#include "sdg/weil.hpp"

namespace sdg::test {

inline RationalMatrix rmat(std::initializer_list<std::initializer_list<const char*>> rows) {
  RationalMatrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (const char* x : row) m(r, c++) = parse_rational(x);
    ++r;
  }
  return m;
}

inline WeilMatrix wmat(std::initializer_list<std::initializer_list<const char*>> rows) { return to_weil(rmat(rows)); }

inline WeilVector wvec(std::initializer_list<const char*> xs) {
  WeilVector v;
  for (const char* x : xs) v.emplace_back(parse_rational(x));
  return v;
}

inline WeilMatrix column(const WeilVector& v) {
  WeilMatrix m(v.size(), 1);
  m.data() = v;
  return m;
}

/// Pair cube from its base and the target displacement blocks by slot set.
inline Microcube pair_cube(const ContextPtr& ctx, std::size_t arity, const WeilVector& base,
                           const std::map<SlotSet, WeilVector>& table) {
  std::vector<WeilMatrix> blocks(std::size_t{1} << arity, WeilMatrix(base.size(), 1));
  blocks[0] = column(base);
  for (const auto& [s, v] : table) blocks[s] = column(v);
  return Microcube(ctx, GroupoidKind::Pair, arity, base, std::move(blocks));
}

/// Bundle cube with identity at the origin and the given blocks.
inline Microcube bundle_cube(const ContextPtr& ctx, std::size_t arity, const WeilVector& base, std::size_t k,
                             const std::map<SlotSet, WeilMatrix>& table) {
  std::vector<WeilMatrix> blocks(std::size_t{1} << arity, WeilMatrix(k, k));
  blocks[0] = WeilMatrix::identity(k);
  for (const auto& [s, b] : table) blocks[s] = b;
  return Microcube(ctx, GroupoidKind::Bundle, arity, base, std::move(blocks));
}

/// Hand expansion in the algebra spanned by 1, d1, d2, d1 d2 with d1^2 = d2^2
/// = 0, written over plain rational matrices. Shares nothing with WeilElement.
struct TwoInfinitesimals {
  RationalMatrix one, d1, d2, d12;

  static TwoInfinitesimals constant(const RationalMatrix& a) {
    const RationalMatrix z(a.rows(), a.cols());
    return {a, z, z, z};
  }

  friend TwoInfinitesimals operator*(const TwoInfinitesimals& a, const TwoInfinitesimals& b) {
    return {a.one * b.one, a.one * b.d1 + a.d1 * b.one, a.one * b.d2 + a.d2 * b.one,
            a.one * b.d12 + a.d1 * b.d2 + a.d2 * b.d1 + a.d12 * b.one};
  }
};

}  // namespace sdg::test
