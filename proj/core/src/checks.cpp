#include "checks.hpp"

#include "sdg/classical_oracle.hpp"
#include "sdg/errors.hpp"
#include "sdg/operators.hpp"

namespace sdg::detail {

void Trial::fail(std::string property, Json instance, Json lhs, Json rhs, std::string lhs_op, std::string rhs_op,
                 std::string detail) {
  Json w = {{"trial", index}, {"property", std::move(property)}};
  if (!instance.is_null()) w["instance"] = std::move(instance);
  if (!lhs_op.empty()) w["lhs_op"] = std::move(lhs_op);
  if (!rhs_op.empty()) w["rhs_op"] = std::move(rhs_op);
  if (!lhs.is_null()) w["lhs"] = std::move(lhs);
  if (!rhs.is_null()) w["rhs"] = std::move(rhs);
  if (!detail.empty()) w["detail"] = std::move(detail);
  failures.push_back(std::move(w));
}

Json instance_json(const DifferentialForm* form, const Representation* rho, const Microcube* cube) {
  Json out = Json::object();
  if (form) {
    try {
      out["form"] = form_to_json(*form);
    } catch (const InputError&) {
      out["form_description"] = form->description();
    }
  }
  if (rho) out["representation"] = representation_to_json(*rho);
  if (cube) out["microcube"] = microcube_to_json(*cube);
  return out;
}

namespace {

// ------------------------------------------------------------------ helpers

Microcube cube(Trial& t, GroupoidKind kind, std::size_t arity, std::size_t fiber_dim = 0) {
  return random_microcube(t.rng, t.ctx, kind, arity, t.cfg.base_dim, fiber_dim ? fiber_dim : t.cfg.fiber_dim,
                          t.cfg.bound);
}

WeilElement fresh(Trial& t) { return WeilElement::generator(t.ctx->allocate()); }

Arrow at(const Microcube& c, std::initializer_list<WeilElement> args) {
  const WeilVector v(args);
  return c.evaluate(v);
}

void expect_cube(Trial& t, const std::string& property, const Microcube& source, const Microcube& lhs,
                 const Microcube& rhs) {
  if (!(lhs == rhs))
    t.fail(property, instance_json(nullptr, nullptr, &source), microcube_to_json(lhs), microcube_to_json(rhs));
}

void expect_matrix(Trial& t, const std::string& property, Json instance, const WeilMatrix& lhs, const WeilMatrix& rhs,
                   const std::string& lhs_op = {}, const std::string& rhs_op = {}) {
  if (!(lhs == rhs)) t.fail(property, std::move(instance), matrix_to_json(lhs), matrix_to_json(rhs), lhs_op, rhs_op);
}

Json arrow_json(const Arrow& a) {
  Json j = {{"source", vector_to_json(a.source)}, {"target", vector_to_json(a.target)}};
  if (a.kind == GroupoidKind::Bundle) j["element"] = matrix_to_json(a.element);
  return j;
}

void expect_arrow(Trial& t, const std::string& property, const Microcube& source, const Arrow& lhs, const Arrow& rhs) {
  if (!(lhs == rhs)) t.fail(property, instance_json(nullptr, nullptr, &source), arrow_json(lhs), arrow_json(rhs));
}

std::string with_kind(const std::string& what, GroupoidKind g) { return what + " [" + to_string(g) + "]"; }
std::string with_combo(const std::string& what, GroupoidKind g, RepresentationKind r) {
  return what + " [" + to_string(g) + "/" + to_string(r) + "]";
}

Microcube zero_slot_cube(const Microcube& like) {
  WeilMatrix zero(like.block(0).rows(), like.block(0).cols());
  return Microcube(like.context(), like.kind(), 1, like.base(), {like.block(0), zero});
}

// ----------------------------------------------------------------- simplicial

void check_simplicial(Trial& t) {
  for (const auto g : groupoids(t.cfg)) {
    const Microcube c = cube(t, g, 3);
    const std::size_t n = c.arity();
    for (std::size_t i = 1; i <= n + 1; ++i)
      expect_cube(t, with_kind("d_i s_i = id", g), c, face(degeneracy(c, i), i), c);
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t i = 1; i < j; ++i)
        expect_cube(t, with_kind("d_i d_j = d_{j-1} d_i", g), c, face(face(c, j), i), face(face(c, i), j - 1));
    for (std::size_t j = 1; j <= n + 1; ++j)
      for (std::size_t i = 1; i <= j; ++i)
        expect_cube(t, with_kind("s_i s_j = s_{j+1} s_i", g), c, degeneracy(degeneracy(c, j), i),
                    degeneracy(degeneracy(c, i), j + 1));
    for (std::size_t j = 1; j <= n + 1; ++j)
      for (std::size_t i = 1; i <= n + 1; ++i) {
        const Microcube lhs = face(degeneracy(c, j), i);
        if (i < j)
          expect_cube(t, with_kind("d_i s_j = s_{j-1} d_i", g), c, lhs, degeneracy(face(c, i), j - 1));
        else if (i > j + 1)
          expect_cube(t, with_kind("d_i s_j = s_j d_{i-1}", g), c, lhs, degeneracy(face(c, i - 1), j));
      }

    const WeilVector zeros(n, WeilElement(0));
    if (!is_identity(c.evaluate(zeros)))
      t.fail(with_kind("origin is an identity", g), instance_json(nullptr, nullptr, &c), {}, {});

    for (std::size_t i = 1; i <= n + 1; ++i)
      expect_cube(t, with_kind("axis of a degenerate slot is constant", g), c, axis(degeneracy(c, i), i),
                  zero_slot_cube(c));
    const Microcube point = Microcube::point(t.ctx, g, c.base(), c.fiber_dim());
    expect_cube(t, with_kind("degeneracy of a point is constant", g), c, degeneracy(point, 1), zero_slot_cube(c));

    for (std::size_t i = 1; i <= n; ++i) {
      expect_cube(t, with_kind("shifted face at 0 is the face", g), c, shifted_face(c, i, WeilElement(0)), face(c, i));

      // gamma^i_e(d) = gamma(.., e at i, ..) gamma(0..e..0)^{-1}
      const WeilElement e = fresh(t);
      const WeilElement d1 = fresh(t);
      const WeilElement d2 = fresh(t);
      WeilVector full{d1, d2};
      full.insert(full.begin() + static_cast<std::ptrdiff_t>(i - 1), e);
      WeilVector axis_only(n, WeilElement(0));
      axis_only[i - 1] = e;
      const Arrow expected = compose(c.evaluate(full), inverse(c.evaluate(axis_only)));
      expect_arrow(t, with_kind("shifted face definition", g), c, at(shifted_face(c, i, e), {d1, d2}), expected);
    }

    if (g == GroupoidKind::Pair && c.arity() == 3) {
      // Arity-1 cube, i = 1, e = d: the point cube at the target of gamma_d.
      const Microcube one = axis(c, 1);
      const WeilElement d = fresh(t);
      const Microcube shifted = shifted_face(one, 1, d);
      const Microcube expected = Microcube::point(t.ctx, g, at(one, {d}).target, 0);
      expect_cube(t, "arity-1 shifted face is the target point [pair]", one, shifted, expected);
    }
  }
}

// ------------------------------------------------------------------- lemmas

void check_lemma41(Trial& t) {
  for (const auto g : groupoids(t.cfg)) {
    const Microcube c = cube(t, g, 3);  // n + 2 with n = 1
    const std::size_t n = 1;
    for (std::size_t i = 1; i <= n + 1; ++i)
      for (std::size_t j = 1; j <= i; ++j)
        expect_cube(t, with_kind("(gamma_0^j)_i = gamma_{i+1}, j <= i", g), c,
                    axis(shifted_face(c, j, WeilElement(0)), i), axis(c, i + 1));
    for (std::size_t j = 1; j <= n + 2; ++j)
      for (std::size_t i = 1; i < j; ++i)
        expect_cube(t, with_kind("(gamma_0^j)_i = gamma_i, i < j", g), c, axis(shifted_face(c, j, WeilElement(0)), i),
                    axis(c, i));
  }
}

void check_lemma42(Trial& t) {
  for (const auto g : groupoids(t.cfg)) {
    const Microcube c = cube(t, g, 3);
    for (std::size_t i = 1; i <= 3; ++i)
      for (std::size_t j = 1; j < i; ++j) {
        const WeilElement e = fresh(t);
        const WeilElement e2 = fresh(t);
        expect_cube(t, with_kind("interchange", g), c, shifted_face(shifted_face(c, i, e), j, e2),
                    shifted_face(shifted_face(c, j, e2), i - 1, e));

        const WeilElement p = random_infinitesimal(t.rng, *t.ctx, t.cfg.bound);
        const WeilElement q = random_infinitesimal(t.rng, *t.ctx, t.cfg.bound);
        const Microcube lhs = shifted_face(shifted_face(c, i, p), j, q);
        expect_cube(t, with_kind("interchange, parametrized", g), c, lhs,
                    shifted_face(shifted_face(c, j, q), i - 1, p));

        // Both equal d -> gamma(.., q at j, .., p at i, ..) gamma(0..q..p..0)^{-1}.
        const WeilElement d = fresh(t);
        WeilVector full(3, WeilElement(0));
        WeilVector corner(3, WeilElement(0));
        full[j - 1] = corner[j - 1] = q;
        full[i - 1] = corner[i - 1] = p;
        for (auto& x : full)
          if (x.is_zero()) x = d;
        expect_arrow(t, with_kind("interchange, explicit map", g), c, at(lhs, {d}),
                     compose(c.evaluate(full), inverse(c.evaluate(corner))));
      }
  }
}

void check_lemma43(Trial& t) {
  for (const auto& [g, r] : combinations(t.cfg)) {
    const Representation rho = make_representation(t.cfg, r, t.cfg.fiber_dim, t.rng);
    const Microcube c = cube(t, g, 3);
    for (std::size_t i = 1; i <= 3; ++i)
      for (std::size_t j = 1; j < i; ++j) {
        const Comparison cmp = check_lemma43(rho, c, i, j);
        if (!cmp.equal)
          t.fail(with_combo("transport through interchanged faces", g, r), instance_json(nullptr, &rho, &c),
                 matrix_to_json(cmp.lhs), matrix_to_json(cmp.rhs), {}, {}, cmp.detail);
      }

    // Functoriality on composable arrows h: x -> y, g: y -> z.
    const Microcube first = cube(t, g, 1);
    const WeilElement d1 = fresh(t);
    const WeilElement d2 = fresh(t);
    const Arrow h = at(first, {d1});
    const WeilVector y = g == GroupoidKind::Pair ? h.target : h.source;
    std::vector<WeilMatrix> blocks = cube(t, g, 1).blocks();
    if (g == GroupoidKind::Pair) blocks[0].data() = y;
    const Microcube second(t.ctx, g, 1, y, std::move(blocks));
    const Arrow k = at(second, {d2});
    expect_matrix(t, with_combo("functoriality", g, r), instance_json(nullptr, &rho, &first),
                  rho.transport(compose(k, h)), rho.transport(k) * rho.transport(h));
    const Arrow id = identity_arrow(g, y, t.cfg.fiber_dim);
    expect_matrix(t, with_combo("identity acts trivially", g, r), instance_json(nullptr, &rho, &first),
                  rho.transport(id), WeilMatrix::identity(t.cfg.fiber_dim * t.cfg.fiber_dim));
    const WeilMatrix m = rho.transport(h);
    expect_matrix(t, with_combo("transport is invertible", g, r), instance_json(nullptr, &rho, &first),
                  matrix_inverse(m) * m, WeilMatrix::identity(m.rows()));
  }
}

// --------------------------------------------------------------------- star

CubeFamily random_family_over(Trial& t, const Microcube& path) {
  const GeneratorId p = t.ctx->allocate();
  const WeilElement pe = WeilElement::generator(p);
  const WeilVector base = path.kind() == GroupoidKind::Pair ? at(path, {pe}).target : path.base();
  const Microcube u0 = cube(t, path.kind(), 1);
  const Microcube u1 = cube(t, path.kind(), 1);
  WeilMatrix origin =
      path.kind() == GroupoidKind::Pair ? WeilMatrix(base.size(), 1) : WeilMatrix::identity(path.fiber_dim());
  if (path.kind() == GroupoidKind::Pair) origin.data() = base;
  const WeilMatrix slot = u0.block(1) + pe * u1.block(1);
  return CubeFamily{p, Microcube(t.ctx, path.kind(), 1, base, {origin, slot})};
}

void check_star_compat(Trial& t) {
  for (const auto g : groupoids(t.cfg)) {
    const Microcube path = cube(t, g, 1);
    const CubeFamily zeta = random_family_over(t, path);
    const Microcube square = star(zeta, path);

    const Microcube oracle = tabulate(t.ctx, g, 2, path.fiber_dim(), [&](std::span<const WeilElement> d) {
      return compose(at(zeta.at(d[0]), {d[1]}), at(path, {d[0]}));
    });
    expect_cube(t, with_kind("star table equals the composite", g), path, square, oracle);

    const WeilElement d1 = fresh(t);
    const WeilElement d2 = fresh(t);
    const WeilVector args{d1, d2};
    const WeilVector second{d2};
    if (!(square.target_at(args) == zeta.at(d1).target_at(second)))
      t.fail(with_kind("a2(zeta * t) = a1^D(zeta)", g), instance_json(nullptr, nullptr, &path),
             vector_to_json(square.target_at(args)), vector_to_json(zeta.at(d1).target_at(second)));

    // zeta constantly the identity cube over the targets of t.
    WeilMatrix origin = zeta.cube.block(0);
    const CubeFamily trivial{
        zeta.parameter, Microcube(t.ctx, g, 1, zeta.cube.base(), {origin, WeilMatrix(origin.rows(), origin.cols())})};
    const Microcube flat = star(trivial, path);
    if (!flat.block(slot_bit(2)).is_zero() || !flat.block(slot_bit(1) | slot_bit(2)).is_zero())
      t.fail(with_kind("identity family gives a trivial second direction", g), instance_json(nullptr, nullptr, &path),
             microcube_to_json(flat), Json());

    for (const auto& [cg, r] : combinations(t.cfg)) {
      if (cg != g) continue;
      const Representation rho = make_representation(t.cfg, r, t.cfg.fiber_dim, t.rng);
      const Comparison cmp = check_star_homomorphism(rho, zeta, path);
      if (!cmp.equal)
        t.fail(with_combo("rho respects star", g, r), instance_json(nullptr, &rho, &path), matrix_to_json(cmp.lhs),
               matrix_to_json(cmp.rhs), {}, {}, cmp.detail);
    }
  }
}

// ----------------------------------------------------------- tangent vectors

Json tangent_json(const TangentVector& a) {
  return {{"base", vector_to_json(a.base)}, {"value", matrix_to_json(a.value)}};
}

Json pair_json(const TangentVector& a, const TangentVector& b) {
  return {{"t1", matrix_to_json(a.value)}, {"t2", matrix_to_json(b.value)}, {"base", vector_to_json(a.base)}};
}

void check_bracket_oracle(Trial& t) {
  std::vector<std::size_t> dims = {2, 3};
  if (t.cfg.fiber_dim != 2 && t.cfg.fiber_dim != 3) dims.push_back(t.cfg.fiber_dim);
  for (const auto k : dims) {
    const TangentVector t1 = random_tangent(t.rng, t.cfg.base_dim, k, t.cfg.bound);
    TangentVector t2 = random_tangent(t.rng, t.cfg.base_dim, k, t.cfg.bound);
    t2.base = t1.base;
    const WeilMatrix extracted = bracket(*t.ctx, t1, t2).value;

    const RationalMatrix x1 = to_rational(t1.value);
    const RationalMatrix x2 = to_rational(t2.value);
    const RationalMatrix commutator = x2 * x1 - x1 * x2;
    if (!(to_weil(commutator) == extracted))
      t.fail("bracket equals X2 X1 - X1 X2 (k=" + std::to_string(k) + ")", pair_json(t1, t2), matrix_to_json(extracted),
             matrix_to_json(to_weil(commutator)), "bracket", "commutator");

    const Rational a = t.rng.nonzero_rational(t.cfg.bound);
    expect_matrix(t, "bracket is linear in the first slot (k=" + std::to_string(k) + ")", pair_json(t1, t2),
                  bracket(*t.ctx, tangent_scale(a, t1), t2).value, a * extracted);
    expect_matrix(t, "bracket is linear in the second slot (k=" + std::to_string(k) + ")", pair_json(t1, t2),
                  bracket(*t.ctx, t1, tangent_scale(a, t2)).value, a * extracted);
  }
}

void check_jacobi(Trial& t) {
  const std::size_t k = t.cfg.fiber_dim;
  const TangentVector a = random_tangent(t.rng, t.cfg.base_dim, k, t.cfg.bound);
  TangentVector b = random_tangent(t.rng, t.cfg.base_dim, k, t.cfg.bound);
  TangentVector c = random_tangent(t.rng, t.cfg.base_dim, k, t.cfg.bound);
  b.base = c.base = a.base;
  auto br = [&](const TangentVector& x, const TangentVector& y) { return bracket(*t.ctx, x, y); };
  const WeilMatrix zero(k, k);

  expect_matrix(t, "[a, a] = 0", pair_json(a, a), br(a, a).value, zero);
  expect_matrix(t, "[a, b] = -[b, a]", pair_json(a, b), br(a, b).value, -br(b, a).value);
  const WeilMatrix jacobi = br(br(a, b), c).value + br(br(b, c), a).value + br(br(c, a), b).value;
  expect_matrix(t, "Jacobi identity", {{"a", tangent_json(a)}, {"b", tangent_json(b)}, {"c", tangent_json(c)}}, jacobi,
                zero);
  expect_matrix(t, "[a + b, c] = [a, c] + [b, c]", pair_json(a, c), br(tangent_add(a, b), c).value,
                br(a, c).value + br(b, c).value);
}

void check_tangent_add(Trial& t) {
  const std::size_t k = t.cfg.fiber_dim;
  const TangentVector t1 = random_tangent(t.rng, t.cfg.base_dim, k, t.cfg.bound);
  TangentVector t2 = random_tangent(t.rng, t.cfg.base_dim, k, t.cfg.bound);
  t2.base = t1.base;
  const TangentVector sum = tangent_add(t1, t2);
  const WeilElement d = fresh(t);
  const WeilElement dd = d * fresh(t);
  for (const auto& w : {d, dd}) {
    const Arrow lhs = tangent_eval(sum, w);
    const Arrow forward = compose(tangent_eval(t2, w), tangent_eval(t1, w));
    const Arrow backward = compose(tangent_eval(t1, w), tangent_eval(t2, w));
    expect_matrix(t, "(t1 + t2)_d = (t2)_d (t1)_d", pair_json(t1, t2), lhs.element, forward.element);
    expect_matrix(t, "(t2)_d (t1)_d = (t1)_d (t2)_d", pair_json(t1, t2), forward.element, backward.element);
  }
  const TangentVector zero{t1.base, WeilMatrix(k, k)};
  if (!(tangent_add(t1, zero) == t1)) t.fail("t + 0 = t", tangent_json(t1), tangent_json(tangent_add(t1, zero)), {});
  expect_matrix(t, "0_d is the identity", tangent_json(t1), tangent_eval(zero, d).element, WeilMatrix::identity(k));
}

void check_tangent_inverse(Trial& t) {
  const std::size_t k = t.cfg.fiber_dim;
  const TangentVector v = random_tangent(t.rng, t.cfg.base_dim, k, t.cfg.bound);
  const WeilElement d = fresh(t);
  const WeilElement dd = d * fresh(t);
  for (const auto& w : {d, dd}) {
    const Arrow plus = tangent_eval(v, w);
    const Arrow minus = tangent_eval(v, -w);
    expect_matrix(t, "t_{-d} t_d = I", tangent_json(v), compose(minus, plus).element, WeilMatrix::identity(k));
    expect_matrix(t, "t_d t_{-d} = I", tangent_json(v), compose(plus, minus).element, WeilMatrix::identity(k));
    expect_matrix(t, "t_{-d} = (t_d)^{-1}", tangent_json(v), minus.element, inverse(plus).element);
  }
  expect_matrix(t, "t_0 = I", tangent_json(v), tangent_eval(v, WeilElement(0)).element, WeilMatrix::identity(k));
}

// ---------------------------------------------------------------------- forms

void record_violations(Trial& t, const std::string& label, const DifferentialForm& form, const Representation* rho,
                       const std::vector<FormViolation>& violations, const std::string& op = "form") {
  for (const auto& v : violations)
    t.fail(label + ": " + v.property, instance_json(&form, rho, &v.cube), matrix_to_json(v.lhs), matrix_to_json(v.rhs),
           op, op);
}

void check_form_axioms(Trial& t) {
  for (const auto& [g, r] : combinations(t.cfg)) {
    const Representation rho = make_representation(t.cfg, r, t.cfg.fiber_dim, t.rng);
    for (const auto n : t.cfg.degrees) {
      const DifferentialForm omega = random_classical_form(t.rng, n, g, t.cfg.base_dim, t.cfg.fiber_dim, t.cfg.bound);
      FormCheckConfig fc{g, t.cfg.base_dim, t.rng.next(), 1, t.cfg.bound};
      record_violations(t, with_combo("classical degree " + std::to_string(n), g, r), omega, &rho,
                        validate_form(omega, fc));
      if (n + 1 > 3) continue;
      fc.seed = t.rng.next();
      record_violations(t, with_combo("d+ of degree " + std::to_string(n), g, r), omega, &rho,
                        validate_form(d_plus(omega, rho), fc), "dplus");
      if (n >= 1) {
        fc.seed = t.rng.next();
        record_violations(t, with_combo("dx of degree " + std::to_string(n), g, r), omega, &rho,
                          validate_form(d_times(omega, rho), fc), "dtimes");
      }
      if (n == 1) {
        fc.seed = t.rng.next();
        record_violations(t, with_combo("dcontour", g, r), omega, &rho, validate_form(d_contour(omega, rho), fc),
                          "dcontour");
      }
    }
  }
}

void check_phi_conditions(Trial& t) {
  for (const auto& [g, r] : combinations(t.cfg)) {
    const Representation rho = make_representation(t.cfg, r, t.cfg.fiber_dim, t.rng);
    for (const auto n : t.cfg.degrees) {
      t.ctx = std::make_shared<GeneratorContext>();
      const DifferentialForm omega = random_classical_form(t.rng, n, g, t.cfg.base_dim, t.cfg.fiber_dim, t.cfg.bound);
      if (n >= 1)
        record_violations(t, with_combo("phi of classical degree " + std::to_string(n), g, r), omega, &rho,
                          sdg::check_phi_conditions(omega, cube(t, g, n), t.rng));
      if (n + 1 <= 3)
        record_violations(t, with_combo("phi of d+ of degree " + std::to_string(n), g, r), omega, &rho,
                          sdg::check_phi_conditions(d_plus(omega, rho), cube(t, g, n + 1), t.rng), "dplus");
    }
  }
}

/// A 2-cube on which the planted form leaves a residue: with b = [0] entry of
/// block {2} and c = [0] entry of the slot-2 block of the shifted face at
/// slot 1, the d_2 coefficient is c (2b + c). For bundles c = B12 - B2 B1, so
/// B12 is pushed above both products.
Microcube residue_cube(Trial& t, GroupoidKind g) {
  Microcube base = cube(t, g, 2);
  std::vector<WeilMatrix> blocks = base.blocks();
  const SlotSet one = slot_bit(1), two = slot_bit(2);
  blocks[one](0, 0) = WeilElement(t.rng.positive_rational(t.cfg.bound));
  blocks[two](0, 0) = WeilElement(t.rng.positive_rational(t.cfg.bound));
  Rational top = t.rng.positive_rational(t.cfg.bound);
  if (g == GroupoidKind::Bundle) {
    const Rational a = to_rational((blocks[two] * blocks[one])(0, 0));
    const Rational b = to_rational((blocks[one] * blocks[two])(0, 0));
    top += abs(a) + abs(b);
  }
  blocks[one | two](0, 0) = WeilElement(top);
  return Microcube(t.ctx, g, 2, base.base(), std::move(blocks));
}

void check_residue_negative(Trial& t) {
  for (const auto& [g, r] : combinations(t.cfg)) {
    const Representation rho = make_representation(t.cfg, r, t.cfg.fiber_dim, t.rng);
    const DifferentialForm bad = planted_invalid_form(t.cfg.fiber_dim);

    const auto violations = validate_form(bad, FormCheckConfig{g, t.cfg.base_dim, t.rng.next(), 8, t.cfg.bound});
    if (violations.empty())
      t.fail(with_combo("validate_form rejects the planted form", g, r), instance_json(&bad, &rho, nullptr), {}, {});

    const Microcube c = residue_cube(t, g);
    const std::pair<const char*, std::function<WeilMatrix()>> ops[] = {
        {"dplus", [&] { return d_plus_value(bad, rho, c); }},
        {"dtimes", [&] { return d_times_value(bad, rho, c); }},
    };
    for (const auto& [name, op] : ops) {
      try {
        const WeilMatrix value = op();
        t.fail(with_combo(std::string(name) + " raises ResidueError on the planted form", g, r),
               instance_json(&bad, &rho, &c), matrix_to_json(value), Json("ResidueError"), name, {});
      } catch (const ResidueError&) {
      }
    }
  }
}

// ------------------------------------------------------------------ operators

Representation combo_rep(Trial& t, RepresentationKind r) {
  return make_representation(t.cfg, r, t.cfg.fiber_dim, t.rng);
}

void check_dplus_sq_zero(Trial& t) {
  for (const auto& [g, r] : combinations(t.cfg)) {
    const Representation rho = combo_rep(t, r);
    for (const std::size_t n : {0u, 1u}) {
      if (!t.cfg.wants_degree(n)) continue;
      const DifferentialForm omega = random_classical_form(t.rng, n, g, t.cfg.base_dim, t.cfg.fiber_dim, t.cfg.bound);
      const Microcube c = cube(t, g, n + 2);
      const WeilMatrix value = d_plus_value(d_plus(omega, rho), rho, c);
      expect_matrix(t, with_combo("d+ d+ = 0, degree " + std::to_string(n), g, r), instance_json(&omega, &rho, &c),
                    value, WeilMatrix(t.cfg.fiber_dim, t.cfg.fiber_dim), "dplus2", "zero");
    }
  }
}

void check_coincidence(Trial& t) {
  for (const auto& [g, r] : combinations(t.cfg)) {
    const Representation rho = combo_rep(t, r);
    for (const std::size_t n : {1u, 2u}) {
      if (!t.cfg.wants_degree(n)) continue;
      const DifferentialForm omega = random_classical_form(t.rng, n, g, t.cfg.base_dim, t.cfg.fiber_dim, t.cfg.bound);
      const Microcube c = cube(t, g, n + 1);
      const Json inst = instance_json(&omega, &rho, &c);
      expect_matrix(t, with_combo("d+ = dx, degree " + std::to_string(n), g, r), inst, d_plus_value(omega, rho, c),
                    d_times_value(omega, rho, c), "dplus", "dtimes");

      // F_i(0)_{-d} F_i(e)_d = I + d e DF_i
      const std::size_t k = t.cfg.fiber_dim;
      for (std::size_t i = 1; i <= n + 1; ++i) {
        const WeilElement d = fresh(t);
        const WeilElement e = fresh(t);
        const WeilMatrix a = omega.evaluate(shifted_face(c, i, WeilElement(0)));
        const WeilMatrix f = rho.act_inverse(at(axis(c, i), {e}), omega.evaluate(shifted_face(c, i, e)));
        const WeilMatrix lhs = tangent_eval({c.base(), a}, -d).element * tangent_eval({c.base(), f}, d).element;
        const WeilMatrix rhs = WeilMatrix::identity(k) + (d * e) * derivative_DF(omega, rho, c, i);
        expect_matrix(t, with_combo("F_i(0)_{-d} F_i(e)_d = (DF_i)_{de}", g, r), inst, lhs, rhs);
      }

      if (n == 1) {
        const Microcube c3 = cube(t, g, 3);
        expect_matrix(t, with_combo("dx dx = 0, degree 1", g, r), instance_json(&omega, &rho, &c3),
                      d_times_value(d_times(omega, rho), rho, c3), WeilMatrix(k, k));
      }
    }
  }
}

void check_order_indep(Trial& t) {
  for (const auto& [g, r] : combinations(t.cfg)) {
    const Representation rho = combo_rep(t, r);
    for (const std::size_t n : {1u, 2u}) {
      if (!t.cfg.wants_degree(n)) continue;
      const DifferentialForm omega = random_classical_form(t.rng, n, g, t.cfg.base_dim, t.cfg.fiber_dim, t.cfg.bound);
      const Microcube c = cube(t, g, n + 1);
      expect_matrix(t, with_combo("dx factor order, degree " + std::to_string(n), g, r),
                    instance_json(&omega, &rho, &c), d_times_value(omega, rho, c, FactorOrder::Forward),
                    d_times_value(omega, rho, c, FactorOrder::Reverse), "dtimes", "dtimes-reversed");
    }
  }
}

void check_mc_formula(Trial& t) {
  for (const auto& [g, r] : combinations(t.cfg)) {
    const Representation rho = combo_rep(t, r);
    const DifferentialForm omega = random_classical_form(t.rng, 1, g, t.cfg.base_dim, t.cfg.fiber_dim, t.cfg.bound);
    const Microcube c = cube(t, g, 2);
    expect_matrix(t, with_combo("dcontour - dx = [omega(gamma_0^2), omega(gamma_0^1)]", g, r),
                  instance_json(&omega, &rho, &c), mc_defect(omega, rho, c), mc_bracket_term(omega, c), "mcdefect",
                  "bracket");

    const Microcube flat = degeneracy(cube(t, g, 1), 1 + t.rng.below(2));
    const std::size_t k = t.cfg.fiber_dim;
    expect_matrix(t, with_combo("defect vanishes on a degenerate square", g, r), instance_json(&omega, &rho, &flat),
                  mc_defect(omega, rho, flat), WeilMatrix(k, k), "mcdefect", "zero");

    // Abelian fiber: k = 1.
    const Representation rho1 = make_representation(t.cfg, r, 1, t.rng);
    const DifferentialForm omega1 = random_classical_form(t.rng, 1, g, t.cfg.base_dim, 1, t.cfg.bound);
    const Microcube c1 = cube(t, g, 2, 1);
    expect_matrix(t, with_combo("abelian fiber: dcontour = dx", g, r), instance_json(&omega1, &rho1, &c1),
                  d_contour_value(omega1, rho1, c1), d_times_value(omega1, rho1, c1), "dcontour", "dtimes");
  }
}

void check_closed_corollary(Trial& t) {
  const std::size_t m = t.cfg.base_dim;
  const std::size_t k = t.cfg.fiber_dim;
  for (const auto& [g, r] : combinations(t.cfg)) {
    if (g != GroupoidKind::Pair || r != RepresentationKind::Trivial) continue;
    const Representation rho = Representation::trivial(k);
    const DifferentialForm omega = random_classical_form(t.rng, 1, g, m, k, t.cfg.bound, /*constant=*/true);
    const Microcube c = cube(t, g, 2);
    const Json inst = instance_json(&omega, &rho, &c);
    const WeilMatrix zero(k, k);
    const WeilMatrix dplus = d_plus_value(omega, rho, c);
    expect_matrix(t, "constant form is closed: d+ = 0", inst, dplus, zero, "dplus", "zero");
    if (!dplus.is_zero()) continue;
    expect_matrix(t, "closed form: dx = 0", inst, d_times_value(omega, rho, c), zero, "dtimes", "zero");
    expect_matrix(t, "closed form: dcontour = [omega(gamma_0^2), omega(gamma_0^1)]", inst,
                  d_contour_value(omega, rho, c), mc_bracket_term(omega, c), "dcontour", "bracket");

    if (t.index == 0 && k == 2 && m >= 2) {
      // A1 dx1 + A2 dx2 on the unit coordinate square.
      RationalMatrix a1(2, 2), a2(2, 2);
      a1(0, 1) = 1;
      a2(1, 0) = 1;
      const DifferentialForm fixed = DifferentialForm::classical(
          1, 2, m, {{{0}, MatrixPolynomial::constant(a1, m)}, {{1}, MatrixPolynomial::constant(a2, m)}});
      const WeilVector x = random_point(t.rng, m, t.cfg.bound);
      std::vector<WeilMatrix> blocks(4, WeilMatrix(m, 1));
      blocks[0].data() = x;
      blocks[1](0, 0) = 1;
      blocks[2](1, 0) = 1;
      const Microcube unit(t.ctx, g, 2, x, std::move(blocks));
      RationalMatrix expected(2, 2);
      expected(0, 0) = -1;
      expected(1, 1) = 1;
      expect_matrix(t, "unit square example", instance_json(&fixed, &rho, &unit), d_contour_value(fixed, rho, unit),
                    to_weil(expected), "dcontour", "expected");
    }
  }
}

void check_classical_cross(Trial& t) {
  const std::size_t m = t.cfg.base_dim;
  const std::size_t k = t.cfg.fiber_dim;
  for (const auto& [g, r] : combinations(t.cfg)) {
    if (g != GroupoidKind::Pair || r != RepresentationKind::Trivial) continue;
    const Representation rho = Representation::trivial(k);
    for (const std::size_t n : {0u, 1u}) {
      if (!t.cfg.wants_degree(n)) continue;
      const DifferentialForm omega = random_classical_form(t.rng, n, g, m, k, t.cfg.bound);
      const Microcube c = cube(t, g, n + 1);
      const RationalMatrix x_col = to_rational(c.block(0));
      const std::vector<Rational> x = x_col.data();
      std::vector<RationalVector> vectors;
      for (std::size_t slot = 1; slot <= n + 1; ++slot) vectors.push_back(to_rational(c.block(slot_bit(slot))).data());
      expect_matrix(t, "d+ equals the classical exterior derivative, degree " + std::to_string(n),
                    instance_json(&omega, &rho, &c), d_plus_value(omega, rho, c),
                    to_weil(classical_exterior_derivative(omega, x, vectors)), "dplus", "classical");
    }

    if (t.index == 0) {
      // f(x) = x^2 on the path 1 -> 1 + d: value 2.
      const DifferentialForm f = DifferentialForm::zero_form(MatrixPolynomial::parse({{"x1^2"}}, 1));
      const Microcube path(
          t.ctx, g, 1, {WeilElement(1)},
          {to_weil(RationalMatrix(1, 1) + RationalMatrix::identity(1)), to_weil(RationalMatrix::identity(1))});
      const Representation rho1 = Representation::trivial(1);
      expect_matrix(t, "derivative of x^2 at 1 along 1", instance_json(&f, &rho1, &path), d_plus_value(f, rho1, path),
                    WeilElement(2) * WeilMatrix::identity(1), "dplus", "expected");
    }
  }
}

}  // namespace

const std::vector<CheckEntry>& registry() {
  static const std::vector<CheckEntry> entries = {
      {"simplicial", &check_simplicial},
      {"lemma41", &check_lemma41},
      {"lemma42", &check_lemma42},
      {"lemma43", &check_lemma43},
      {"star_compat", &check_star_compat},
      {"bracket_oracle", &check_bracket_oracle},
      {"jacobi", &check_jacobi},
      {"tangent_add", &check_tangent_add},
      {"tangent_inverse", &check_tangent_inverse},
      {"form_axioms", &check_form_axioms},
      {"phi_conditions", &check_phi_conditions},
      {"residue_negative", &check_residue_negative},
      {"dplus_sq_zero", &check_dplus_sq_zero},
      {"coincidence", &check_coincidence},
      {"order_indep", &check_order_indep},
      {"mc_formula", &check_mc_formula},
      {"closed_corollary", &check_closed_corollary},
      {"classical_cross", &check_classical_cross},
  };
  return entries;
}

}  // namespace sdg::detail
