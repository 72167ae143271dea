#include "sdg/operators.hpp"

#include <gtest/gtest.h>

#include "sdg/classical_oracle.hpp"
#include "sdg/errors.hpp"
#include "sdg/harness.hpp"
#include "support.hpp"

namespace sdg {
namespace {

using test::bundle_cube;
using test::pair_cube;
using test::rmat;
using test::TwoInfinitesimals;
using test::wmat;
using test::wvec;

struct Combo {
  GroupoidKind groupoid;
  Representation rho;
};

std::vector<Combo> combos(Rng& rng, std::size_t m, std::size_t k) {
  return {{GroupoidKind::Pair, Representation::trivial(k)},
          {GroupoidKind::Pair, Representation::gauge(random_gauge_field(rng, m, k, 3))},
          {GroupoidKind::Bundle, Representation::trivial(k)},
          {GroupoidKind::Bundle, Representation::adjoint(k)}};
}

WeilElement fresh(const ContextPtr& ctx) { return WeilElement::generator(ctx->allocate()); }

TEST(DPlus, SquareFunctionAlongUnitPath) {
  auto ctx = std::make_shared<GeneratorContext>();
  const auto f = MatrixPolynomial::parse({{"x1^2"}}, 1);
  const DifferentialForm omega = DifferentialForm::zero_form(f);
  const Microcube path = pair_cube(ctx, 1, wvec({"1"}), {{slot_bit(1), wvec({"1"})}});
  // Weil expansion oracle: f(1 + d) - f(1) = 2d.
  const WeilElement d = fresh(ctx);
  const WeilVector moved = {WeilElement(1) + d};
  const WeilElement diff = f(0, 0).evaluate(std::span<const WeilElement>(moved)) - WeilElement(1);
  ASSERT_EQ(factor_top(diff, Monomial::single(d.terms().front().first.indices().front())), WeilElement(2));
  EXPECT_EQ(d_plus_value(omega, Representation::trivial(1), path), wmat({{"2"}}));
}

TEST(DPlus, ConstantZeroFormIsClosed) {
  Rng rng(41);
  auto ctx = std::make_shared<GeneratorContext>();
  for (const auto& [g, rho] : combos(rng, 2, 2)) {
    if (rho.kind() != RepresentationKind::Trivial) continue;
    const DifferentialForm omega = random_classical_form(rng, 0, g, 2, 2, 3, true);
    EXPECT_TRUE(d_plus_value(omega, rho, random_microcube(rng, ctx, g, 1, 2, 2, 3)).is_zero());
  }
}

TEST(DPlus, MatchesClassicalExteriorDerivative) {
  Rng rng(42);
  auto ctx = std::make_shared<GeneratorContext>();
  const Representation rho = Representation::trivial(2);
  for (int t = 0; t < 20; ++t)
    for (std::size_t n = 0; n <= 2; ++n) {
      const DifferentialForm omega = random_classical_form(rng, n, GroupoidKind::Pair, 3, 2, 3);
      const Microcube c = random_microcube(rng, ctx, GroupoidKind::Pair, n + 1, 3, 0, 3);
      const std::vector<Rational> x = to_rational(c.block(0)).data();
      std::vector<RationalVector> vs;
      for (std::size_t i = 1; i <= n + 1; ++i) vs.push_back(to_rational(c.block(slot_bit(i))).data());
      EXPECT_EQ(d_plus_value(omega, rho, c), to_weil(classical_exterior_derivative(omega, x, vs)));
    }
}

TEST(DPlus, SquaresToZero) {
  Rng rng(43);
  auto ctx = std::make_shared<GeneratorContext>();
  for (int t = 0; t < 3; ++t)
    for (const auto& [g, rho] : combos(rng, 2, 2))
      for (std::size_t n = 0; n <= 1; ++n) {
        const DifferentialForm omega = random_classical_form(rng, n, g, 2, 2, 3);
        const Microcube c = random_microcube(rng, ctx, g, n + 2, 2, 2, 3);
        EXPECT_TRUE(d_plus_value(d_plus(omega, rho), rho, c).is_zero()) << rho.describe() << " n=" << n;
      }
}

TEST(DPlus, OutputIsAForm) {
  Rng rng(44);
  for (const auto& [g, rho] : combos(rng, 2, 2)) {
    const DifferentialForm out = d_plus(random_classical_form(rng, 1, g, 2, 2, 3), rho);
    EXPECT_EQ(out.degree(), 2u);
    EXPECT_FALSE(out.is_classical());
    const auto violations = validate_form(out, FormCheckConfig{g, 2, 1, 2, 3});
    EXPECT_TRUE(violations.empty()) << rho.describe() << ": " << violations.front().property;
  }
}

TEST(DerivativeDF, ShiftedFaceDifference) {
  Rng rng(45);
  auto ctx = std::make_shared<GeneratorContext>();
  for (const auto& [g, rho] : combos(rng, 2, 2)) {
    const DifferentialForm omega = random_classical_form(rng, 1, g, 2, 2, 3);
    const Microcube c = random_microcube(rng, ctx, g, 2, 2, 2, 3);
    for (std::size_t i = 1; i <= 2; ++i) {
      const WeilElement d = fresh(ctx);
      const WeilMatrix f_d = rho.act_inverse(axis(c, i).evaluate(WeilVector{d}), omega.evaluate(shifted_face(c, i, d)));
      const WeilMatrix lhs = omega.evaluate(shifted_face(c, i, WeilElement(0))) - f_d;
      EXPECT_EQ(lhs, -d * derivative_DF(omega, rho, c, i));
    }
  }
}

TEST(DerivativeDF, ConstantFormTrivialRepresentation) {
  Rng rng(46);
  auto ctx = std::make_shared<GeneratorContext>();
  const DifferentialForm omega = random_classical_form(rng, 1, GroupoidKind::Pair, 2, 2, 3, true);
  const Microcube c = random_microcube(rng, ctx, GroupoidKind::Pair, 2, 2, 0, 3);
  // The pair cube's faces move only through second-order terms, which a
  // constant 1-form does not see on a square with zero {1,2} block.
  std::vector<WeilMatrix> blocks = c.blocks();
  blocks[3] = WeilMatrix(2, 1);
  const Microcube flat(ctx, GroupoidKind::Pair, 2, c.base(), blocks);
  for (std::size_t i = 1; i <= 2; ++i) EXPECT_TRUE(derivative_DF(omega, Representation::trivial(2), flat, i).is_zero());
}

TEST(DTimes, CoincidesWithDPlus) {
  Rng rng(47);
  auto ctx = std::make_shared<GeneratorContext>();
  for (int t = 0; t < 3; ++t)
    for (const auto& [g, rho] : combos(rng, 2, 2))
      for (std::size_t n = 1; n <= 2; ++n) {
        const DifferentialForm omega = random_classical_form(rng, n, g, 2, 2, 3);
        const Microcube c = random_microcube(rng, ctx, g, n + 1, 2, 2, 3);
        const WeilMatrix forward = d_times_value(omega, rho, c, FactorOrder::Forward);
        EXPECT_EQ(forward, d_plus_value(omega, rho, c)) << rho.describe() << " n=" << n;
        EXPECT_EQ(forward, d_times_value(omega, rho, c, FactorOrder::Reverse));
      }
}

TEST(DTimes, AbelianConstantFormIsClosed) {
  Rng rng(48);
  auto ctx = std::make_shared<GeneratorContext>();
  const DifferentialForm omega = random_classical_form(rng, 1, GroupoidKind::Pair, 2, 1, 3, true);
  const Microcube c = random_microcube(rng, ctx, GroupoidKind::Pair, 2, 2, 0, 3);
  EXPECT_TRUE(d_times_value(omega, Representation::trivial(1), c).is_zero());
}

TEST(DTimes, UndefinedInDegreeZero) {
  Rng rng(49);
  auto ctx = std::make_shared<GeneratorContext>();
  const DifferentialForm omega = random_classical_form(rng, 0, GroupoidKind::Pair, 2, 2, 3);
  EXPECT_THROW(
      d_times_value(omega, Representation::trivial(2), random_microcube(rng, ctx, GroupoidKind::Pair, 1, 2, 0, 3)),
      std::invalid_argument);
}

TEST(DContour, ClosedFormOnUnitSquareIsTheBracket) {
  auto ctx = std::make_shared<GeneratorContext>();
  const RationalMatrix x = rmat({{"0", "1"}, {"0", "0"}});
  const RationalMatrix y = rmat({{"0", "0"}, {"1", "0"}});
  const DifferentialForm omega = DifferentialForm::classical(
      1, 2, 2, {{{0}, MatrixPolynomial::constant(x, 2)}, {{1}, MatrixPolynomial::constant(y, 2)}});
  const Microcube unit =
      pair_cube(ctx, 2, wvec({"0", "0"}), {{slot_bit(1), wvec({"1", "0"})}, {slot_bit(2), wvec({"0", "1"})}});
  const Representation rho = Representation::trivial(2);

  // Oracle: omega(gamma_0^2) = X and omega(gamma_0^1) = Y, and [X, Y] from the
  // hand expansion of (I - d2 Y)(I - d1 X)(I + d2 Y)(I + d1 X).
  const RationalMatrix i = RationalMatrix::identity(2), z(2, 2);
  const TwoInfinitesimals word = TwoInfinitesimals{i, z, -y, z} * TwoInfinitesimals{i, -x, z, z} *
                                 TwoInfinitesimals{i, z, y, z} * TwoInfinitesimals{i, x, z, z};
  ASSERT_EQ(word.d12, rmat({{"-1", "0"}, {"0", "1"}}));

  EXPECT_TRUE(d_plus_value(omega, rho, unit).is_zero());
  EXPECT_TRUE(d_times_value(omega, rho, unit).is_zero());
  EXPECT_EQ(d_contour_value(omega, rho, unit), to_weil(word.d12));
  EXPECT_EQ(mc_bracket_term(omega, unit), to_weil(word.d12));
}

TEST(DContour, AbelianFiberAgreesWithDTimes) {
  Rng rng(50);
  auto ctx = std::make_shared<GeneratorContext>();
  for (const auto& [g, rho] : combos(rng, 2, 1)) {
    const DifferentialForm omega = random_classical_form(rng, 1, g, 2, 1, 3);
    const Microcube c = random_microcube(rng, ctx, g, 2, 2, 1, 3);
    EXPECT_EQ(d_contour_value(omega, rho, c), d_times_value(omega, rho, c)) << rho.describe();
    EXPECT_TRUE(mc_defect(omega, rho, c).is_zero());
  }
}

TEST(McDefect, EqualsBracketOfFaces) {
  Rng rng(51);
  auto ctx = std::make_shared<GeneratorContext>();
  for (int t = 0; t < 5; ++t)
    for (const auto& [g, rho] : combos(rng, 2, 2)) {
      const DifferentialForm omega = random_classical_form(rng, 1, g, 2, 2, 3);
      const Microcube c = random_microcube(rng, ctx, g, 2, 2, 2, 3);
      const WeilMatrix a2 = omega.evaluate(shifted_face(c, 2, WeilElement(0)));
      const WeilMatrix a1 = omega.evaluate(shifted_face(c, 1, WeilElement(0)));
      EXPECT_EQ(mc_defect(omega, rho, c), a1 * a2 - a2 * a1) << rho.describe();
      EXPECT_EQ(mc_bracket_term(omega, c), a1 * a2 - a2 * a1);
    }
}

TEST(McDefect, DegenerateSquareGivesZero) {
  Rng rng(52);
  auto ctx = std::make_shared<GeneratorContext>();
  for (const auto& [g, rho] : combos(rng, 2, 2)) {
    const DifferentialForm omega = random_classical_form(rng, 1, g, 2, 2, 3);
    const Microcube path = random_microcube(rng, ctx, g, 1, 2, 2, 3);
    for (std::size_t i = 1; i <= 2; ++i) EXPECT_TRUE(mc_defect(omega, rho, degeneracy(path, i)).is_zero());
  }
}

TEST(Residue, PlantedFormRaises) {
  auto ctx = std::make_shared<GeneratorContext>();
  const DifferentialForm bad = planted_invalid_form(2);
  const Microcube c = pair_cube(ctx, 2, wvec({"0", "1"}),
                                {{slot_bit(1), wvec({"1", "0"})},
                                 {slot_bit(2), wvec({"2", "1"})},
                                 {slot_bit(1) | slot_bit(2), wvec({"1", "0"})}});
  const Representation rho = Representation::trivial(2);
  EXPECT_THROW(d_plus_value(bad, rho, c), ResidueError);
  EXPECT_THROW(d_times_value(bad, rho, c), ResidueError);
  const Microcube b = bundle_cube(ctx, 2, wvec({"0"}), 2,
                                  {{slot_bit(1), wmat({{"1", "0"}, {"0", "0"}})},
                                   {slot_bit(2), wmat({{"1", "0"}, {"0", "0"}})},
                                   {slot_bit(1) | slot_bit(2), wmat({{"2", "0"}, {"0", "0"}})}});
  EXPECT_THROW(d_plus_value(bad, Representation::adjoint(2), b), ResidueError);
}

}  // namespace
}  // namespace sdg
