#include "sdg/classical_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sdg {

namespace {

Rational leibniz_det(const std::vector<RationalVector>& rows) {
  const std::size_t n = rows.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational det = 0;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    Rational term = inversions % 2 == 0 ? 1 : -1;
    for (std::size_t r = 0; r < n && term != 0; ++r) term *= rows[r][perm[r]];
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

RationalMatrix coefficient_at(const MatrixPolynomial& a, std::span<const Rational> x) { return a.evaluate(x); }

/// Directional derivative of a coefficient along v.
MatrixPolynomial along(const MatrixPolynomial& a, const RationalVector& v) {
  MatrixPolynomial out(a.rows(), a.cols(), a.variables());
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] == 0) continue;
    const MatrixPolynomial partial = a.derivative(j);
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += partial(r, c) * v[j];
  }
  return out;
}

Rational selected_det(const std::vector<std::size_t>& index, std::span<const RationalVector> vectors) {
  std::vector<RationalVector> rows;
  for (const auto& v : vectors) {
    RationalVector row;
    for (auto k : index) row.push_back(v.at(k));
    rows.push_back(std::move(row));
  }
  return leibniz_det(rows);
}

void require_classical(const DifferentialForm& omega, std::size_t vector_count) {
  if (!omega.is_classical()) throw std::invalid_argument("classical oracle needs a classical form");
  if (vector_count != omega.degree() && vector_count != omega.degree() + 1)
    throw std::invalid_argument("classical oracle: wrong number of vectors");
}

}  // namespace

RationalMatrix classical_form_value(const DifferentialForm& omega, std::span<const Rational> x,
                                    std::span<const RationalVector> vectors) {
  require_classical(omega, vectors.size());
  if (vectors.size() != omega.degree()) throw std::invalid_argument("classical_form_value: wrong vector count");
  RationalMatrix out(omega.fiber_dim(), omega.fiber_dim());
  for (const auto& term : omega.terms()) {
    const Rational det = selected_det(term.index, vectors);
    if (det != 0) out += det * coefficient_at(term.coefficient, x);
  }
  return out;
}

RationalMatrix classical_exterior_derivative(const DifferentialForm& omega, std::span<const Rational> x,
                                             std::span<const RationalVector> vectors) {
  require_classical(omega, vectors.size());
  if (vectors.size() != omega.degree() + 1)
    throw std::invalid_argument("classical_exterior_derivative: wrong vector count");
  RationalMatrix out(omega.fiber_dim(), omega.fiber_dim());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    std::vector<RationalVector> rest;
    for (std::size_t r = 0; r < vectors.size(); ++r)
      if (r != i) rest.push_back(vectors[r]);
    RationalMatrix contribution(omega.fiber_dim(), omega.fiber_dim());
    for (const auto& term : omega.terms()) {
      const Rational det = selected_det(term.index, rest);
      if (det != 0) contribution += det * coefficient_at(along(term.coefficient, vectors[i]), x);
    }
    if (i % 2 == 0)
      out += contribution;
    else
      out -= contribution;
  }
  return out;
}

}  // namespace sdg
