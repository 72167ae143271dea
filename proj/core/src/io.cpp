#include "sdg/io.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <toml.hpp>

#include "sdg/errors.hpp"

namespace sdg {

namespace {

std::string describe(const Json& j) {
  std::string s = j.dump();
  if (s.size() > 60) s = s.substr(0, 57) + "...";
  return s;
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::size_t natural(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw InputError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  throw InputError("expected a rational string, got " + describe(j));
}

Json weil_to_json(const WeilElement& a) {
  Json out = Json::array();
  for (const auto& [m, c] : a.terms()) out.push_back({{"monomial", m.indices()}, {"coeff", to_string(c)}});
  return out;
}

Json entry_to_json(const WeilElement& a) {
  if (a.is_constant()) return to_string(a.constant_term());
  return weil_to_json(a);
}

WeilElement entry_from_json(const Json& j, GeneratorContext& context) {
  if (!j.is_array()) return WeilElement(rational_from_json(j));
  std::vector<WeilElement::Term> terms;
  for (const auto& t : j) {
    Monomial m;
    for (const auto& idx : member(t, "monomial")) {
      const std::size_t i = natural(idx, "generator index");
      if (i >= kMaxGenerators) throw InputError("generator index out of range");
      if (m.contains(static_cast<std::uint32_t>(i))) throw InputError("repeated generator in a monomial");
      m.insert(static_cast<std::uint32_t>(i));
      context.reserve_through(static_cast<std::uint32_t>(i));
    }
    terms.emplace_back(m, rational_from_json(member(t, "coeff")));
  }
  return WeilElement::from_terms(context.id(), std::move(terms));
}

Json matrix_to_json(const WeilMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(entry_to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

WeilMatrix matrix_from_json(const Json& j, GeneratorContext& context) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) throw InputError("expected a matrix (list of rows)");
  const std::size_t cols = j.front().size();
  WeilMatrix out(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InputError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = entry_from_json(j[r][c], context);
  }
  return out;
}

Json vector_to_json(const WeilVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(entry_to_json(x));
  return out;
}

WeilVector vector_from_json(const Json& j, GeneratorContext& context) {
  if (!j.is_array()) throw InputError("expected a vector");
  WeilVector out;
  for (const auto& x : j) out.push_back(entry_from_json(x, context));
  return out;
}

// --------------------------------------------------------------- microcubes

Json microcube_to_json(const Microcube& cube) {
  Json table = Json::array();
  for (SlotSet s = 0; s < cube.blocks().size(); ++s) {
    const WeilMatrix& b = cube.block(s);
    if (s != 0 && b.is_zero()) continue;
    std::vector<std::size_t> slots;
    for (std::size_t i = 1; i <= cube.arity(); ++i)
      if (s & slot_bit(i)) slots.push_back(i);
    Json block = cube.kind() == GroupoidKind::Pair ? vector_to_json(b.data()) : matrix_to_json(b);
    table.push_back({{"monomial", slots}, {"block", std::move(block)}});
  }
  Json out = {{"groupoid", to_string(cube.kind())},
              {"arity", cube.arity()},
              {"base", vector_to_json(cube.base())},
              {"table", std::move(table)}};
  if (cube.kind() == GroupoidKind::Bundle) out["fiber_dim"] = cube.fiber_dim();
  return out;
}

Microcube microcube_from_json(const Json& j, const ContextPtr& context) {
  const GroupoidKind kind = parse_groupoid_kind(member(j, "groupoid").get<std::string>());
  const std::size_t arity = natural(member(j, "arity"), "arity");
  if (arity > kMaxArity) throw InputError("arity too large");
  WeilVector base = vector_from_json(member(j, "base"), *context);
  const Json& table = member(j, "table");
  if (!table.is_array()) throw InputError("table must be a list");

  std::vector<std::optional<WeilMatrix>> blocks(std::size_t{1} << arity);
  for (const auto& entry : table) {
    SlotSet s = 0;
    for (const auto& slot : member(entry, "monomial")) {
      const std::size_t i = natural(slot, "slot");
      if (i < 1 || i > arity) throw InputError("table slot outside 1..arity");
      if (s & slot_bit(i)) throw InputError("repeated slot in a table monomial");
      s |= slot_bit(i);
    }
    if (blocks[s]) throw InputError("duplicate table monomial");
    const Json& block = member(entry, "block");
    if (kind == GroupoidKind::Pair) {
      WeilMatrix column(base.size(), 1);
      WeilVector v = vector_from_json(block, *context);
      if (v.size() != base.size()) throw InputError("pair block length differs from the base dimension");
      column.data() = std::move(v);
      blocks[s] = std::move(column);
    } else {
      blocks[s] = matrix_from_json(block, *context);
    }
  }

  std::size_t rows = base.size();
  std::size_t cols = 1;
  if (kind == GroupoidKind::Bundle) {
    std::optional<std::size_t> k;
    if (j.contains("fiber_dim")) k = natural(j.at("fiber_dim"), "fiber_dim");
    for (const auto& b : blocks)
      if (b && !k) k = b->rows();
    if (!k || *k == 0) throw InputError("bundle microcube needs a fiber dimension");
    rows = cols = *k;
  }
  std::vector<WeilMatrix> out;
  out.reserve(blocks.size());
  for (SlotSet s = 0; s < blocks.size(); ++s) {
    if (blocks[s]) {
      out.push_back(std::move(*blocks[s]));
    } else if (s == 0) {
      if (kind == GroupoidKind::Pair) {
        WeilMatrix column(rows, 1);
        column.data() = base;
        out.push_back(std::move(column));
      } else {
        out.push_back(WeilMatrix::identity(rows));
      }
    } else {
      out.emplace_back(rows, cols);
    }
  }
  return Microcube(context, kind, arity, std::move(base), std::move(out));
}

// -------------------------------------------------------------------- forms

Json form_to_json(const DifferentialForm& form) {
  if (!form.is_classical() && form.description() == "planted invalid")
    return {{"kind", "planted_invalid"}, {"degree", form.degree()}, {"fiber_dim", form.fiber_dim()}};
  if (!form.is_classical()) throw InputError("only classical forms can be serialized (" + form.description() + ")");
  Json terms = Json::array();
  for (const auto& t : form.terms()) terms.push_back({{"index", t.index}, {"matrix", t.coefficient.to_strings()}});
  return {{"degree", form.degree()},
          {"fiber_dim", form.fiber_dim()},
          {"base_dim", form.base_dim()},
          {"terms", std::move(terms)}};
}

namespace {

std::vector<std::vector<std::string>> string_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("expected a matrix of polynomial strings");
  std::vector<std::vector<std::string>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw InputError("expected a matrix of polynomial strings");
    std::vector<std::string> r;
    for (const auto& e : row) {
      if (e.is_string())
        r.push_back(e.get<std::string>());
      else if (e.is_number_integer())
        r.push_back(e.dump());
      else
        throw InputError("polynomial entries must be strings");
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

DifferentialForm form_from_json(const Json& j, std::size_t default_base_dim) {
  if (j.is_object() && j.contains("kind")) {
    if (j.at("kind") != "planted_invalid") throw InputError("unknown form kind " + describe(j.at("kind")));
    return planted_invalid_form(natural(member(j, "fiber_dim"), "fiber_dim"));
  }
  const std::size_t degree = natural(member(j, "degree"), "degree");
  const std::size_t k = natural(member(j, "fiber_dim"), "fiber_dim");
  const std::size_t m = j.contains("base_dim") ? natural(j.at("base_dim"), "base_dim") : default_base_dim;
  if (m == 0) throw InputError("form needs a base dimension");
  std::vector<DifferentialForm::Term> terms;
  for (const auto& t : member(j, "terms")) {
    std::vector<std::size_t> index;
    for (const auto& i : member(t, "index")) index.push_back(natural(i, "form index"));
    terms.push_back({std::move(index), MatrixPolynomial::parse(string_matrix(member(t, "matrix")), m)});
  }
  return DifferentialForm::classical(degree, k, m, std::move(terms));
}

Json representation_to_json(const Representation& rho) {
  Json out = {{"kind", to_string(rho.kind())}, {"fiber_dim", rho.fiber_dim()}};
  if (rho.kind() == RepresentationKind::Gauge) out["gauge"] = rho.gauge_field().to_strings();
  return out;
}

Representation representation_from_json(const Json& j, std::size_t base_dim, std::size_t fiber_dim) {
  const RepresentationKind kind = parse_representation_kind(member(j, "kind").get<std::string>());
  switch (kind) {
    case RepresentationKind::Trivial:
      return Representation::trivial(fiber_dim);
    case RepresentationKind::Adjoint:
      return Representation::adjoint(fiber_dim);
    case RepresentationKind::Gauge: {
      auto field = MatrixPolynomial::parse(string_matrix(member(j, "gauge")), base_dim);
      if (field.rows() != fiber_dim) throw InputError("gauge field size differs from the fiber dimension");
      return Representation::gauge(std::move(field));
    }
  }
  throw InputError("unknown representation");
}

// --------------------------------------------------------------- documents

namespace {

Json from_toml(const toml::node& node) {
  if (const auto* table = node.as_table()) {
    Json out = Json::object();
    for (const auto& [key, value] : *table) out[std::string(key.str())] = from_toml(value);
    return out;
  }
  if (const auto* array = node.as_array()) {
    Json out = Json::array();
    for (const auto& value : *array) out.push_back(from_toml(value));
    return out;
  }
  if (const auto* s = node.as_string()) return s->get();
  if (const auto* i = node.as_integer()) return i->get();
  if (const auto* b = node.as_boolean()) return b->get();
  if (node.is_floating_point()) throw InputError("floating-point values are not accepted; use rational strings");
  throw InputError("unsupported TOML value type");
}

}  // namespace

Json parse_toml(std::string_view text, std::string_view source_name) {
  try {
    const toml::table table = toml::parse(text, source_name);
    return from_toml(table);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "TOML parse error in " << source_name << ": " << e.description() << " (line " << e.source().begin.line << ")";
    throw InputError(os.str());
  }
}

Json load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (path.extension() == ".toml") return parse_toml(text, path.string());
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("JSON parse error in " + path.string() + ": " + e.what());
  }
}

}  // namespace sdg
