#include "sdg/operators.hpp"

#include <stdexcept>

#include "sdg/errors.hpp"

namespace sdg {

namespace {

void require_arity(const DifferentialForm& omega, const Microcube& gamma, const char* what) {
  if (gamma.arity() != omega.degree() + 1)
    throw std::invalid_argument(std::string(what) + ": expected a " + std::to_string(omega.degree() + 1) +
                                "-cube, got arity " + std::to_string(gamma.arity()));
}

void require_compatible(const Representation& rho, const Microcube& gamma, const DifferentialForm& omega) {
  if (!rho.supports(gamma.kind()))
    throw std::invalid_argument(std::string(to_string(rho.kind())) + " representation on the " +
                                to_string(gamma.kind()) + " groupoid");
  if (rho.fiber_dim() != omega.fiber_dim()) throw std::invalid_argument("representation and form fiber dims differ");
}

WeilVector generators(const std::vector<GeneratorId>& ids) {
  WeilVector out;
  for (const auto& g : ids) out.push_back(WeilElement::generator(g));
  return out;
}

WeilElement product_except(const WeilVector& ds, std::size_t skip) {
  WeilElement w(1);
  for (std::size_t r = 0; r < ds.size(); ++r)
    if (r != skip) w *= ds[r];
  return w;
}

Arrow axis_at(const Microcube& gamma, std::size_t i, const WeilElement& e) {
  const WeilElement args[] = {e};
  return axis(gamma, i).evaluate(args);
}

/// F_i(e) = rho(gamma_i)_e^{-1} omega(gamma_e^i).
WeilMatrix transported_face(const DifferentialForm& omega, const Representation& rho, const Microcube& gamma,
                            std::size_t i, const WeilElement& e) {
  return rho.act_inverse(axis_at(gamma, i, e), omega.evaluate(shifted_face(gamma, i, e)));
}

WeilMatrix group_value(const Microcube& gamma, const WeilMatrix& x, const WeilElement& w) {
  return tangent_eval(TangentVector{gamma.base(), x}, w).element;
}

std::string op_description(const char* op, const DifferentialForm& omega, const Representation& rho) {
  return std::string(op) + "(" + omega.description() + ")[" + rho.describe() + "]";
}

}  // namespace

WeilMatrix d_plus_value(const DifferentialForm& omega, const Representation& rho, const Microcube& gamma) {
  require_arity(omega, gamma, "d_plus");
  require_compatible(rho, gamma, omega);
  const auto ids = gamma.context()->allocate(gamma.arity());
  const WeilVector ds = generators(ids);
  const std::size_t k = omega.fiber_dim();

  WeilMatrix sum(k, k);
  for (std::size_t i = 1; i <= gamma.arity(); ++i) {
    const WeilMatrix bracket =
        omega.evaluate(shifted_face(gamma, i, WeilElement(0))) - transported_face(omega, rho, gamma, i, ds[i - 1]);
    const WeilElement w = product_except(ds, i - 1);
    if (i % 2 == 1)
      sum -= w * bracket;
    else
      sum += w * bracket;
  }
  return factor_top(sum, Monomial::of(ids));
}

DifferentialForm d_plus(const DifferentialForm& omega, const Representation& rho) {
  return DifferentialForm::custom(omega.degree() + 1, omega.fiber_dim(), op_description("d+", omega, rho),
                                  [omega, rho](const Microcube& g) { return d_plus_value(omega, rho, g); });
}

WeilMatrix derivative_DF(const DifferentialForm& omega, const Representation& rho, const Microcube& gamma,
                         std::size_t i) {
  require_arity(omega, gamma, "DF");
  require_compatible(rho, gamma, omega);
  const GeneratorId e = gamma.context()->allocate();
  const WeilMatrix moved = transported_face(omega, rho, gamma, i, WeilElement::generator(e));
  const WeilMatrix still = transported_face(omega, rho, gamma, i, WeilElement(0));
  return factor_top(moved - still, Monomial::single(e.index));
}

WeilMatrix d_times_value(const DifferentialForm& omega, const Representation& rho, const Microcube& gamma,
                         FactorOrder order) {
  if (omega.degree() == 0) throw std::invalid_argument("d_times is defined for degree >= 1");
  require_arity(omega, gamma, "d_times");
  require_compatible(rho, gamma, omega);
  const auto ids = gamma.context()->allocate(gamma.arity());
  const WeilVector ds = generators(ids);
  const std::size_t k = omega.fiber_dim();

  std::vector<WeilMatrix> factors;
  for (std::size_t i = 1; i <= gamma.arity(); ++i) {
    const WeilElement w = product_except(ds, i - 1);
    const WeilMatrix face_value = omega.evaluate(shifted_face(gamma, i, WeilElement(0)));
    const WeilMatrix moved = transported_face(omega, rho, gamma, i, ds[i - 1]);
    WeilMatrix factor = group_value(gamma, face_value, w) * group_value(gamma, moved, -w);
    if (i % 2 == 1) factor = matrix_inverse(factor);
    factors.push_back(std::move(factor));
  }
  WeilMatrix product = WeilMatrix::identity(k);
  if (order == FactorOrder::Forward)
    for (const auto& f : factors) product = product * f;
  else
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) product = product * *it;
  return factor_top(product - WeilMatrix::identity(k), Monomial::of(ids));
}

DifferentialForm d_times(const DifferentialForm& omega, const Representation& rho, FactorOrder order) {
  if (omega.degree() == 0) throw std::invalid_argument("d_times is defined for degree >= 1");
  const char* name = order == FactorOrder::Forward ? "dx" : "dx-reversed";
  return DifferentialForm::custom(
      omega.degree() + 1, omega.fiber_dim(), op_description(name, omega, rho),
      [omega, rho, order](const Microcube& g) { return d_times_value(omega, rho, g, order); });
}

WeilMatrix d_contour_value(const DifferentialForm& omega, const Representation& rho, const Microcube& gamma) {
  if (omega.degree() != 1) throw std::invalid_argument("d_contour takes a 1-form");
  require_arity(omega, gamma, "d_contour");
  require_compatible(rho, gamma, omega);
  const auto ids = gamma.context()->allocate(2);
  const WeilVector ds = generators(ids);
  const WeilElement& d1 = ds[0];
  const WeilElement& d2 = ds[1];
  const std::size_t k = omega.fiber_dim();

  const WeilMatrix a1 = omega.evaluate(shifted_face(gamma, 1, WeilElement(0)));
  const WeilMatrix a2 = omega.evaluate(shifted_face(gamma, 2, WeilElement(0)));
  const WeilMatrix f1 = transported_face(omega, rho, gamma, 1, d1);
  const WeilMatrix f2 = transported_face(omega, rho, gamma, 2, d2);

  const WeilMatrix word = group_value(gamma, a1, -d2) * group_value(gamma, f2, -d1) * group_value(gamma, f1, d2) *
                          group_value(gamma, a2, d1);
  return factor_top(word - WeilMatrix::identity(k), Monomial::of(ids));
}

DifferentialForm d_contour(const DifferentialForm& omega, const Representation& rho) {
  if (omega.degree() != 1) throw std::invalid_argument("d_contour takes a 1-form");
  return DifferentialForm::custom(2, omega.fiber_dim(), op_description("dcontour", omega, rho),
                                  [omega, rho](const Microcube& g) { return d_contour_value(omega, rho, g); });
}

WeilMatrix mc_defect(const DifferentialForm& omega, const Representation& rho, const Microcube& gamma) {
  return d_contour_value(omega, rho, gamma) - d_times_value(omega, rho, gamma);
}

WeilMatrix mc_bracket_term(const DifferentialForm& omega, const Microcube& gamma) {
  if (omega.degree() != 1 || gamma.arity() != 2) throw std::invalid_argument("mc_bracket_term: 1-form on a 2-cube");
  const TangentVector t2{gamma.base(), omega.evaluate(shifted_face(gamma, 2, WeilElement(0)))};
  const TangentVector t1{gamma.base(), omega.evaluate(shifted_face(gamma, 1, WeilElement(0)))};
  return bracket(*gamma.context(), t2, t1).value;
}

}  // namespace sdg
