#pragma once

// Textbook exterior calculus on Q^m for classical coordinate forms, written
// over plain rationals with symbolic partial derivatives. It shares no code
// with the microcube evaluation path and serves as the reference for d_plus
// under the trivial representation on the pair groupoid.

#include <span>
#include <vector>

#include "sdg/forms.hpp"

namespace sdg {

using RationalVector = std::vector<Rational>;

/// sum_K A_K(x) det[v_r[K_c]] by the Leibniz formula.
RationalMatrix classical_form_value(const DifferentialForm& omega, std::span<const Rational> x,
                                    std::span<const RationalVector> vectors);

/// d omega(x; v_1..v_{n+1}) = sum_i (-1)^{i+1} (D_{v_i} omega)(x; v_1..^v_i..v_{n+1})
/// for constant vector fields v_r, where D_v differentiates the coefficient
/// polynomials along v.
RationalMatrix classical_exterior_derivative(const DifferentialForm& omega, std::span<const Rational> x,
                                             std::span<const RationalVector> vectors);

}  // namespace sdg
