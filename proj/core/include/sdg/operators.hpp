#pragma once

// Coboundary operators on forms, each defined by extraction: the defining
// expression is assembled over fresh generators d_1..d_{n+1} and the value is
// the coefficient of d_1...d_{n+1} (factor_top). A leftover coefficient on
// any other monomial raises ResidueError.
//
// Notation: gamma_0^i = shifted_face(gamma, i, 0), gamma_e^i =
// shifted_face(gamma, i, e), gamma_i = axis(gamma, i), and
// F_i(e) = rho(gamma_i)_e^{-1} omega(gamma_e^i).

#include "sdg/forms.hpp"
#include "sdg/representation.hpp"

namespace sdg {

/// Additive coboundary: d_1...d_{n+1} d+omega(gamma) =
///   sum_i (-1)^i d_1..^d_i..d_{n+1} { omega(gamma_0^i) - F_i(d_i) }.
WeilMatrix d_plus_value(const DifferentialForm& omega, const Representation& rho, const Microcube& gamma);
DifferentialForm d_plus(const DifferentialForm& omega, const Representation& rho);

/// Derivative at 0 of F_i, from F_i(e) - F_i(0) = e DF_i at a fresh e.
WeilMatrix derivative_DF(const DifferentialForm& omega, const Representation& rho, const Microcube& gamma,
                         std::size_t i);

enum class FactorOrder { Forward, Reverse };

/// Multiplicative coboundary: the product over i of
///   { omega(gamma_0^i)_{w_i} F_i(d_i)_{-w_i} }^{(-1)^i},  w_i = d_1..^d_i..d_{n+1},
/// in the given factor order, minus I, factored by d_1...d_{n+1}.
/// Defined for degree >= 1 only.
WeilMatrix d_times_value(const DifferentialForm& omega, const Representation& rho, const Microcube& gamma,
                         FactorOrder order = FactorOrder::Forward);
DifferentialForm d_times(const DifferentialForm& omega, const Representation& rho,
                         FactorOrder order = FactorOrder::Forward);

/// Contour derivative of a 1-form on a 2-cube, from the word
///   omega(gamma_0^1)_{-d2} F_2(d2)_{-d1} F_1(d1)_{d2} omega(gamma_0^2)_{d1}.
WeilMatrix d_contour_value(const DifferentialForm& omega, const Representation& rho, const Microcube& gamma);
DifferentialForm d_contour(const DifferentialForm& omega, const Representation& rho);

/// d_contour - d_times on gamma.
WeilMatrix mc_defect(const DifferentialForm& omega, const Representation& rho, const Microcube& gamma);

/// [omega(gamma_0^2), omega(gamma_0^1)] via the bracket extraction, the value
/// mc_defect is expected to equal.
WeilMatrix mc_bracket_term(const DifferentialForm& omega, const Microcube& gamma);

}  // namespace sdg
