#include "sdg/representation.hpp"

#include <stdexcept>

#include "sdg/errors.hpp"

namespace sdg {

const char* to_string(RepresentationKind kind) {
  switch (kind) {
    case RepresentationKind::Trivial:
      return "trivial";
    case RepresentationKind::Adjoint:
      return "adjoint";
    case RepresentationKind::Gauge:
      return "gauge";
  }
  return "?";
}

RepresentationKind parse_representation_kind(std::string_view text) {
  if (text == "trivial") return RepresentationKind::Trivial;
  if (text == "adjoint") return RepresentationKind::Adjoint;
  if (text == "gauge") return RepresentationKind::Gauge;
  throw InputError("unknown representation '" + std::string(text) + "'");
}

Representation Representation::trivial(std::size_t fiber_dim) {
  return Representation(RepresentationKind::Trivial, fiber_dim, {});
}

Representation Representation::adjoint(std::size_t fiber_dim) {
  return Representation(RepresentationKind::Adjoint, fiber_dim, {});
}

Representation Representation::gauge(MatrixPolynomial field) {
  if (field.rows() != field.cols() || field.rows() == 0) throw InputError("gauge field must be a square matrix");
  const std::size_t k = field.rows();
  return Representation(RepresentationKind::Gauge, k, std::move(field));
}

bool Representation::supports(GroupoidKind groupoid) const noexcept {
  switch (kind_) {
    case RepresentationKind::Trivial:
      return true;
    case RepresentationKind::Adjoint:
      return groupoid == GroupoidKind::Bundle;
    case RepresentationKind::Gauge:
      return groupoid == GroupoidKind::Pair;
  }
  return false;
}

WeilMatrix Representation::transport(const Arrow& a) const {
  if (!supports(a.kind))
    throw std::invalid_argument(std::string(to_string(kind_)) + " representation does not act on the " +
                                to_string(a.kind) + " groupoid");
  const std::size_t k = fiber_dim_;
  const WeilMatrix id = WeilMatrix::identity(k);
  switch (kind_) {
    case RepresentationKind::Trivial:
      return WeilMatrix::identity(k * k);
    case RepresentationKind::Adjoint: {
      if (a.element.rows() != k) throw std::invalid_argument("adjoint: arrow fiber dimension differs");
      return kronecker(a.element, transpose(matrix_inverse(a.element)));
    }
    case RepresentationKind::Gauge: {
      const WeilMatrix p = field_.evaluate(a.target) * matrix_inverse(field_.evaluate(a.source));
      return kronecker(p, id);
    }
  }
  throw std::logic_error("unreachable");
}

WeilVector vectorize(const WeilMatrix& x) { return x.data(); }

WeilMatrix unvectorize(const WeilVector& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw std::invalid_argument("unvectorize: length mismatch");
  WeilMatrix out(rows, cols);
  out.data() = v;
  return out;
}

namespace {

WeilMatrix apply(const WeilMatrix& map, const WeilMatrix& x) {
  WeilMatrix column(x.rows() * x.cols(), 1);
  column.data() = vectorize(x);
  return unvectorize((map * column).data(), x.rows(), x.cols());
}

}  // namespace

WeilMatrix Representation::act(const Arrow& a, const WeilMatrix& x) const { return apply(transport(a), x); }

WeilMatrix Representation::act_inverse(const Arrow& a, const WeilMatrix& x) const {
  return apply(matrix_inverse(transport(a)), x);
}

std::string Representation::describe() const {
  std::string out = to_string(kind_);
  out += "(k=" + std::to_string(fiber_dim_) + ")";
  return out;
}

// ------------------------------------------------------------------ checks

Comparison check_lemma43(const Representation& rho, const Microcube& cube, std::size_t i, std::size_t j) {
  if (!(1 <= j && j < i && i <= cube.arity()))
    throw std::out_of_range("face transport check needs 1 <= j < i <= arity");
  auto& ctx = *cube.context();
  const WeilElement di = WeilElement::generator(ctx.allocate());
  const WeilElement dj = WeilElement::generator(ctx.allocate());
  auto at = [](const Microcube& c, const WeilElement& d) {
    const WeilElement args[] = {d};
    return c.evaluate(args);
  };

  const WeilMatrix lhs = matrix_inverse(rho.transport(at(axis(cube, i), di))) *
                         matrix_inverse(rho.transport(at(axis(shifted_face(cube, i, di), j), dj)));
  const WeilMatrix rhs = matrix_inverse(rho.transport(at(axis(cube, j), dj))) *
                         matrix_inverse(rho.transport(at(axis(shifted_face(cube, j, dj), i - 1), di)));
  Comparison out{lhs == rhs, lhs, rhs, {}};
  if (!out.equal) out.detail = "i=" + std::to_string(i) + " j=" + std::to_string(j);
  return out;
}

Comparison check_star_homomorphism(const Representation& rho, const CubeFamily& zeta, const Microcube& t) {
  const Microcube square = star(zeta, t);
  auto& ctx = *t.context();
  const WeilElement d1 = WeilElement::generator(ctx.allocate());
  const WeilElement d2 = WeilElement::generator(ctx.allocate());

  const WeilElement pair[] = {d1, d2};
  const WeilMatrix lhs = rho.transport(square.evaluate(pair));

  const WeilElement first[] = {d1};
  const WeilElement second[] = {d2};
  const Arrow leg1 = t.evaluate(first);
  const Arrow leg2 = zeta.at(d1).evaluate(second);
  const WeilMatrix rhs = rho.transport(leg2) * rho.transport(leg1);
  const WeilMatrix direct = rho.transport(compose(leg2, leg1));

  Comparison out{lhs == rhs && rhs == direct, lhs, rhs, {}};
  if (!out.equal) out.detail = lhs == rhs ? "composite transport differs from product" : "star table differs";
  return out;
}

}  // namespace sdg
