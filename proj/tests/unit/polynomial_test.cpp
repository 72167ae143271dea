#include "sdg/polynomial.hpp"

#include <gtest/gtest.h>

#include "sdg/errors.hpp"
#include "sdg/random.hpp"
#include "support.hpp"

namespace sdg {
namespace {

using test::rmat;

Rational at(const Polynomial& p, std::initializer_list<long> xs) {
  std::vector<Rational> point;
  for (long x : xs) point.emplace_back(x);
  return p.evaluate(std::span<const Rational>(point));
}

TEST(Polynomial, ParseAndEvaluate) {
  const Polynomial p = Polynomial::parse("3*x1^2 - x1*x2 + 1/2", 2);
  EXPECT_EQ(at(p, {2, 5}), Rational(12 - 10) + Rational(1, 2));
  EXPECT_EQ(p.total_degree(), 2);
  EXPECT_EQ(at(Polynomial::parse("(x1 + 1)^3", 1), {1}), 8);
  EXPECT_EQ(at(Polynomial::parse("-(x2 - x1)/3", 2), {1, 4}), -1);
  EXPECT_EQ(Polynomial::parse("x1 - x1", 1), Polynomial(1));
}

TEST(Polynomial, ParseErrors) {
  EXPECT_THROW(Polynomial::parse("x3", 2), InputError);
  EXPECT_THROW(Polynomial::parse("x1 +", 1), InputError);
  EXPECT_THROW(Polynomial::parse("1/x1", 1), InputError);
  EXPECT_THROW(Polynomial::parse("x1^-1", 1), InputError);
  EXPECT_THROW(Polynomial::parse("0.5", 1), InputError);
}

TEST(Polynomial, PrintParseRoundTrip) {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const Polynomial p = random_polynomial(rng, 3, 3, 4);
    EXPECT_EQ(Polynomial::parse(p.to_string(), 3), p) << p.to_string();
  }
}

TEST(Polynomial, Derivative) {
  const Polynomial p = Polynomial::parse("x1^3*x2 + 4*x2^2 - 7", 2);
  EXPECT_EQ(p.derivative(0), Polynomial::parse("3*x1^2*x2", 2));
  EXPECT_EQ(p.derivative(1), Polynomial::parse("x1^3 + 8*x2", 2));
}

TEST(Polynomial, WeilEvaluationIsFirstOrderTaylor) {
  // f(x + d v) = f(x) + d (grad f . v) when d^2 = 0.
  Rng rng(22);
  GeneratorContext ctx;
  const WeilElement d = WeilElement::generator(ctx.allocate());
  for (int t = 0; t < 30; ++t) {
    const Polynomial p = random_polynomial(rng, 2, 4, 3);
    const std::vector<Rational> x = {rng.rational(3), rng.rational(3)};
    const std::vector<Rational> v = {rng.rational(3), rng.rational(3)};
    const WeilVector moved = {x[0] + d * v[0], x[1] + d * v[1]};
    const Rational slope = p.derivative(0).evaluate(std::span<const Rational>(x)) * v[0] +
                           p.derivative(1).evaluate(std::span<const Rational>(x)) * v[1];
    EXPECT_EQ(p.evaluate(std::span<const WeilElement>(moved)),
              WeilElement(p.evaluate(std::span<const Rational>(x))) + slope * d);
  }
}

TEST(MatrixPolynomial, ParseEvaluate) {
  const MatrixPolynomial m = MatrixPolynomial::parse({{"x1", "1"}, {"x1*x2", "x2^2 - 1"}}, 2);
  const std::vector<Rational> x = {Rational(2), Rational(3)};
  EXPECT_EQ(m.evaluate(std::span<const Rational>(x)), rmat({{"2", "1"}, {"6", "8"}}));
  EXPECT_EQ(MatrixPolynomial::parse(m.to_strings(), 2), m);
  EXPECT_THROW(MatrixPolynomial::parse({{"1", "2"}, {"3"}}, 1), InputError);
}

}  // namespace
}  // namespace sdg
