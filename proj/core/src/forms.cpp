#include "sdg/forms.hpp"

#include <stdexcept>

#include "sdg/errors.hpp"

namespace sdg {

namespace {

WeilElement determinant(const WeilMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return WeilElement(1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  WeilElement det;
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    WeilMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t cc = 0, out = 0; cc < n; ++cc)
        if (cc != c) minor(r - 1, out++) = m(r, cc);
    WeilElement term = m(0, c) * determinant(minor);
    if (c % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

void validate_terms(std::size_t degree, std::size_t fiber_dim, std::size_t base_dim,
                    const std::vector<DifferentialForm::Term>& terms) {
  for (const auto& t : terms) {
    if (t.index.size() != degree) throw InputError("form term index length differs from the degree");
    for (std::size_t c = 1; c < t.index.size(); ++c)
      if (t.index[c - 1] >= t.index[c]) throw InputError("form term index must be strictly increasing");
    if (t.coefficient.rows() != fiber_dim || t.coefficient.cols() != fiber_dim)
      throw InputError("form coefficient must be fiber_dim x fiber_dim");
    if (t.coefficient.variables() != base_dim) throw InputError("form coefficient has the wrong variable count");
  }
}

}  // namespace

DifferentialForm DifferentialForm::classical(std::size_t degree, std::size_t fiber_dim, std::size_t base_dim,
                                             std::vector<Term> terms) {
  if (fiber_dim == 0) throw InputError("form fiber dimension must be positive");
  validate_terms(degree, fiber_dim, base_dim, terms);
  auto impl = std::make_shared<Impl>();
  impl->degree = degree;
  impl->fiber_dim = fiber_dim;
  impl->base_dim = base_dim;
  impl->terms = std::move(terms);
  impl->description = "classical degree " + std::to_string(degree);
  return DifferentialForm(std::move(impl));
}

DifferentialForm DifferentialForm::zero_form(MatrixPolynomial section) {
  const std::size_t k = section.rows();
  const std::size_t m = section.variables();
  return classical(0, k, m, {Term{{}, std::move(section)}});
}

DifferentialForm DifferentialForm::custom(std::size_t degree, std::size_t fiber_dim, std::string description,
                                          Evaluator evaluator) {
  if (!evaluator) throw std::invalid_argument("custom form needs an evaluator");
  auto impl = std::make_shared<Impl>();
  impl->degree = degree;
  impl->fiber_dim = fiber_dim;
  impl->description = std::move(description);
  impl->evaluator = std::move(evaluator);
  return DifferentialForm(std::move(impl));
}

WeilMatrix DifferentialForm::evaluate(const Microcube& cube) const {
  if (cube.arity() != impl_->degree)
    throw std::invalid_argument("form of degree " + std::to_string(impl_->degree) + " evaluated on a " +
                                std::to_string(cube.arity()) + "-cube");
  if (impl_->evaluator) return impl_->evaluator(cube);

  if (cube.base_dim() != impl_->base_dim) throw InputError("form and microcube have different base dimensions");
  const std::size_t n = impl_->degree;
  std::vector<WeilVector> first_order;
  for (std::size_t r = 1; r <= n; ++r) first_order.push_back(cube.first_order(r));

  WeilMatrix value(impl_->fiber_dim, impl_->fiber_dim);
  for (const auto& term : impl_->terms) {
    WeilMatrix selected(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        if (term.index[c] >= first_order[r].size())
          throw InputError("form index " + std::to_string(term.index[c]) + " exceeds the microcube coordinates");
        selected(r, c) = first_order[r][term.index[c]];
      }
    const WeilElement det = determinant(selected);
    if (det.is_zero()) continue;
    value += det * term.coefficient.evaluate(cube.base());
  }
  return value;
}

DifferentialForm planted_invalid_form(std::size_t fiber_dim) {
  return DifferentialForm::custom(1, fiber_dim, "planted invalid", [fiber_dim](const Microcube& cube) {
    const WeilVector v = cube.first_order(1);
    Rational collapsed = 0;
    for (const auto& [m, c] : v.at(0).terms()) collapsed += c;
    return WeilElement(Rational(collapsed * collapsed)) * WeilMatrix::identity(fiber_dim);
  });
}

// -------------------------------------------------------------- validation

namespace {

WeilMatrix phi_multiplicative(const DifferentialForm& form, const Microcube& cube, const WeilVector& ds) {
  WeilElement w(1);
  for (const auto& d : ds) w *= d;
  return tangent_eval(TangentVector{cube.base(), form.evaluate(cube)}, w).element;
}

WeilMatrix phi_additive(const DifferentialForm& form, const Microcube& cube, const WeilVector& ds) {
  WeilElement w(1);
  for (const auto& d : ds) w *= d;
  return w * form.evaluate(cube);
}

void compare(std::vector<FormViolation>& out, const std::string& property, const Microcube& cube, const WeilMatrix& lhs,
             const WeilMatrix& rhs) {
  if (!(lhs == rhs)) out.push_back(FormViolation{property, cube, lhs, rhs});
}

}  // namespace

std::vector<FormViolation> check_phi_conditions(const DifferentialForm& form, const Microcube& cube, Rng& rng) {
  const std::size_t n = form.degree();
  if (n == 0) throw std::invalid_argument("phi conditions need degree >= 1");
  std::vector<FormViolation> out;
  WeilVector ds;
  for (const auto& g : cube.context()->allocate(n)) ds.push_back(WeilElement::generator(g));

  using Phi = WeilMatrix (*)(const DifferentialForm&, const Microcube&, const WeilVector&);
  const std::pair<const char*, Phi> readings[] = {{"multiplicative", &phi_multiplicative}, {"additive", &phi_additive}};
  for (const auto& [label, phi] : readings) {
    const std::string tag = std::string(" (") + label + ")";
    const WeilMatrix base_value = phi(form, cube, ds);
    for (std::size_t i = 1; i <= n; ++i) {
      const Rational a = rng.nonzero_rational(3);
      WeilVector scaled = ds;
      scaled[0] *= a;
      compare(out, "phi scaling slot " + std::to_string(i) + tag, cube, phi(form, scale_axis(cube, i, a), ds),
              phi(form, cube, scaled));
    }
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t j = i + 1; j <= n; ++j) {
        const Rational a = rng.nonzero_rational(3);
        WeilVector left = ds;
        WeilVector right = ds;
        left[i - 1] *= a;
        right[j - 1] *= a;
        compare(out, "phi transfer " + std::to_string(i) + "->" + std::to_string(j) + tag, cube, phi(form, cube, left),
                phi(form, cube, right));
      }
    const auto sigma = rng.permutation(n);
    const WeilMatrix permuted = phi(form, permute(cube, sigma), ds);
    WeilMatrix expected = base_value;
    if (permutation_sign(sigma) < 0) {
      if (std::string_view(label) == "multiplicative")
        expected = matrix_inverse(base_value);
      else
        expected = -base_value;
    }
    compare(out, "phi permutation" + tag, cube, permuted, expected);
  }
  return out;
}

std::vector<FormViolation> validate_form(const DifferentialForm& form, const FormCheckConfig& cfg) {
  std::vector<FormViolation> out;
  const std::size_t n = form.degree();
  const std::size_t k = form.fiber_dim();
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(Rng::derive(cfg.seed, "validate_form", trial));
    auto ctx = std::make_shared<GeneratorContext>();
    const Microcube cube = random_microcube(rng, ctx, cfg.groupoid, n, cfg.base_dim, k, cfg.bound);
    const WeilMatrix value = form.evaluate(cube);

    for (std::size_t i = 1; i <= n; ++i) {
      const Rational a = rng.nonzero_rational(cfg.bound);
      compare(out, "homogeneity slot " + std::to_string(i), cube, form.evaluate(scale_axis(cube, i, a)), a * value);
    }
    if (n >= 2) {
      const auto sigma = rng.permutation(n);
      WeilMatrix expected = value;
      if (permutation_sign(sigma) < 0) expected = -expected;
      compare(out, "alternation", cube, form.evaluate(permute(cube, sigma)), expected);
    }

    // Evaluation must commute with substituting an ambient parameter.
    const Microcube parent = random_microcube(rng, ctx, cfg.groupoid, n + 1, cfg.base_dim, k, cfg.bound);
    const std::size_t slot = 1 + rng.below(n + 1);
    const GeneratorId e = ctx->allocate();
    const GeneratorId f = ctx->allocate();
    const WeilMatrix generic = form.evaluate(shifted_face(parent, slot, WeilElement::generator(e)));
    compare(out, "naturality e->0", parent, substitute(generic, {{e, WeilElement(0)}}),
            form.evaluate(face(parent, slot)));
    const Rational c = rng.nonzero_rational(cfg.bound);
    const WeilElement image = c * WeilElement::generator(f);
    compare(out, "naturality e->c f", parent, substitute(generic, {{e, image}}),
            form.evaluate(shifted_face(parent, slot, image)));

    if (n >= 1) {
      auto phi = check_phi_conditions(form, cube, rng);
      out.insert(out.end(), std::make_move_iterator(phi.begin()), std::make_move_iterator(phi.end()));
    }
  }
  return out;
}

}  // namespace sdg
