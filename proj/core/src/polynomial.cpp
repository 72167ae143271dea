#include "sdg/polynomial.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

#include "sdg/errors.hpp"

namespace sdg {

Polynomial Polynomial::constant(std::size_t variables, const Rational& c) {
  Polynomial p(variables);
  p.add_term(Exponents(variables, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t variables, std::size_t index) {
  if (index >= variables) throw InputError("variable index out of range");
  Polynomial p(variables);
  Exponents e(variables, 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0U)));
  return d;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != variables_) throw std::invalid_argument("exponent vector has wrong length");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.variables_ != variables_) throw std::invalid_argument("polynomials over different variable sets");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.variables_ != variables_) throw std::invalid_argument("polynomials over different variable sets");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.variables_ != b.variables_) throw std::invalid_argument("polynomials over different variable sets");
  Polynomial out(a.variables_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::pow(std::uint32_t n) const {
  Polynomial out = constant(variables_, 1);
  for (std::uint32_t i = 0; i < n; ++i) out = out * *this;
  return out;
}

Polynomial Polynomial::derivative(std::size_t index) const {
  if (index >= variables_) throw std::invalid_argument("derivative: variable index out of range");
  Polynomial out(variables_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponents d = e;
    d[index] -= 1;
    out.add_term(d, c * e[index]);
  }
  return out;
}

namespace {

template <class T>
T evaluate_impl(const std::map<Polynomial::Exponents, Rational>& terms, std::span<const T> point,
                std::size_t variables) {
  if (point.size() != variables) throw InputError("point dimension does not match polynomial variables");
  std::vector<std::vector<T>> powers(variables, std::vector<T>{T(1)});
  auto power = [&](std::size_t var, std::uint32_t n) -> const T& {
    auto& cache = powers[var];
    while (cache.size() <= n) cache.push_back(cache.back() * point[var]);
    return cache[n];
  };
  T sum(0);
  for (const auto& [e, c] : terms) {
    T term(c);
    for (std::size_t v = 0; v < variables && !(term == T(0)); ++v)
      if (e[v] != 0) term *= power(v, e[v]);
    sum += term;
  }
  return sum;
}

// Recursive-descent parser over the grammar documented in the header.
class Parser {
 public:
  Parser(std::string_view text, std::size_t variables) : text_(text), variables_(variables) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  Polynomial expression() {
    skip_space();
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = get() == '-';
    Polynomial acc = term();
    if (negate) acc *= Rational(-1);
    for (;;) {
      skip_space();
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      get();
      Polynomial rhs = term();
      if (c == '+')
        acc += rhs;
      else
        acc -= rhs;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      skip_space();
      const char c = peek();
      if (c == '*') {
        get();
        acc = acc * factor();
      } else if (c == '/') {
        get();
        Polynomial divisor = factor();
        if (divisor.total_degree() != 0 || divisor.is_zero()) fail("division by a non-constant or zero");
        acc *= 1 / Rational(divisor.terms().begin()->second);
      } else if (c == 'x' || c == '(' || std::isdigit(static_cast<unsigned char>(c))) {
        acc = acc * factor();  // implicit multiplication, e.g. "2x1"
      } else {
        return acc;
      }
    }
  }

  Polynomial factor() {
    Polynomial base = primary();
    skip_space();
    if (peek() == '^') {
      get();
      skip_space();
      base = base.pow(static_cast<std::uint32_t>(integer()));
    }
    return base;
  }

  Polynomial primary() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      get();
      Polynomial inner = expression();
      skip_space();
      if (get() != ')') fail("expected ')'");
      return inner;
    }
    if (c == 'x') {
      get();
      const auto idx = integer();
      if (idx < 1 || static_cast<std::size_t>(idx) > variables_) fail("variable out of range");
      return Polynomial::variable(variables_, static_cast<std::size_t>(idx - 1));
    }
    if (c == '-') {
      get();
      Polynomial p = factor();
      return p *= Rational(-1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const auto start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) get();
      return Polynomial::constant(variables_, Rational(mpz_class(std::string(text_.substr(start, pos_ - start)))));
    }
    fail("expected a number, variable or '('");
  }

  long integer() {
    const auto start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) get();
    if (start == pos_) fail("expected an integer");
    if (pos_ - start > 6) fail("integer too large");
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("polynomial '" + std::string(text_) + "': " + what + " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t variables_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, std::size_t variables) { return Parser(text, variables).parse(); }

WeilElement Polynomial::evaluate(std::span<const WeilElement> point) const {
  return evaluate_impl<WeilElement>(terms_, point, variables_);
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  return evaluate_impl<Rational>(terms_, point, variables_);
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool has_vars = std::any_of(e.begin(), e.end(), [](auto k) { return k != 0; });
    bool need_star = false;
    if (!has_vars || mag != 1) {
      os << sdg::to_string(mag);
      need_star = true;
    }
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (need_star) os << "*";
      os << "x" << (v + 1);
      if (e[v] > 1) os << "^" << e[v];
      need_star = true;
    }
  }
  return os.str();
}

// ------------------------------------------------------- MatrixPolynomial

MatrixPolynomial::MatrixPolynomial(std::size_t rows, std::size_t cols, std::size_t variables)
    : rows_(rows), cols_(cols), variables_(variables), entries_(rows * cols, Polynomial(variables)) {}

MatrixPolynomial MatrixPolynomial::constant(const RationalMatrix& m, std::size_t variables) {
  MatrixPolynomial out(m.rows(), m.cols(), variables);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Polynomial::constant(variables, m(r, c));
  return out;
}

MatrixPolynomial MatrixPolynomial::parse(const std::vector<std::vector<std::string>>& entries, std::size_t variables) {
  if (entries.empty()) throw InputError("matrix polynomial has no rows");
  const std::size_t cols = entries.front().size();
  MatrixPolynomial out(entries.size(), cols, variables);
  for (std::size_t r = 0; r < entries.size(); ++r) {
    if (entries[r].size() != cols) throw InputError("ragged matrix polynomial");
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = Polynomial::parse(entries[r][c], variables);
  }
  return out;
}

WeilMatrix MatrixPolynomial::evaluate(std::span<const WeilElement> point) const {
  WeilMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.data()[i] = entries_[i].evaluate(point);
  return out;
}

RationalMatrix MatrixPolynomial::evaluate(std::span<const Rational> point) const {
  RationalMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.data()[i] = entries_[i].evaluate(point);
  return out;
}

MatrixPolynomial MatrixPolynomial::derivative(std::size_t index) const {
  MatrixPolynomial out = *this;
  for (auto& e : out.entries_) e = e.derivative(index);
  return out;
}

std::vector<std::vector<std::string>> MatrixPolynomial::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r].push_back((*this)(r, c).to_string());
  return out;
}

}  // namespace sdg
