#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdg/rational.hpp"
#include "sdg/weil.hpp"

namespace sdg {

/// Polynomial with rational coefficients in the base coordinates x1..xm.
/// Used for form coefficient fields and gauge fields; evaluation at a
/// Weil-valued point is what makes forms see infinitesimal displacements.
class Polynomial {
 public:
  using Exponents = std::vector<std::uint32_t>;

  Polynomial() = default;
  explicit Polynomial(std::size_t variables) : variables_(variables) {}
  static Polynomial constant(std::size_t variables, const Rational& c);
  /// x_{index+1}, i.e. index is 0-based.
  static Polynomial variable(std::size_t variables, std::size_t index);

  /// Grammar: sums/differences of products of numbers, p/q literals,
  /// variables x1..xm, powers with non-negative integer exponents and
  /// parenthesised subexpressions. Division is only allowed by constants.
  static Polynomial parse(std::string_view text, std::size_t variables);

  std::size_t variables() const noexcept { return variables_; }
  const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int total_degree() const;

  void add_term(const Exponents& e, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  Polynomial pow(std::uint32_t n) const;
  /// d/dx_{index+1}.
  Polynomial derivative(std::size_t index) const;

  WeilElement evaluate(std::span<const WeilElement> point) const;
  Rational evaluate(std::span<const Rational> point) const;

  std::string to_string() const;

 private:
  std::size_t variables_ = 0;
  std::map<Exponents, Rational> terms_;
};

/// Matrix whose entries are polynomials in the base coordinates.
class MatrixPolynomial {
 public:
  MatrixPolynomial() = default;
  MatrixPolynomial(std::size_t rows, std::size_t cols, std::size_t variables);
  static MatrixPolynomial constant(const RationalMatrix& m, std::size_t variables);
  static MatrixPolynomial parse(const std::vector<std::vector<std::string>>& entries, std::size_t variables);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t variables() const noexcept { return variables_; }

  Polynomial& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Polynomial& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  WeilMatrix evaluate(std::span<const WeilElement> point) const;
  RationalMatrix evaluate(std::span<const Rational> point) const;
  MatrixPolynomial derivative(std::size_t index) const;

  std::vector<std::vector<std::string>> to_strings() const;

  friend bool operator==(const MatrixPolynomial&, const MatrixPolynomial&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t variables_ = 0;
  std::vector<Polynomial> entries_;
};

}  // namespace sdg
