#pragma once

// JSON (and TOML, through the same JSON model) encodings of the library's
// values. Formats are documented in docs/formats.md.
//
// Scalars are written as canonical rational strings. A Weil element with
// generators is a list of {"monomial": [generator indices], "coeff": "p/q"}.
// Readers accept either form for every entry, and integers as JSON numbers.

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string_view>

#include "sdg/forms.hpp"
#include "sdg/groupoid.hpp"
#include "sdg/representation.hpp"

namespace sdg {

using Json = nlohmann::json;

/// Always the term-list form.
Json weil_to_json(const WeilElement& a);
/// Rational string when constant, term list otherwise.
Json entry_to_json(const WeilElement& a);
/// Reads either form. Generators are registered with `context` so later
/// allocations stay fresh.
WeilElement entry_from_json(const Json& j, GeneratorContext& context);
Rational rational_from_json(const Json& j);

Json matrix_to_json(const WeilMatrix& m);
WeilMatrix matrix_from_json(const Json& j, GeneratorContext& context);
Json vector_to_json(const WeilVector& v);
WeilVector vector_from_json(const Json& j, GeneratorContext& context);

/// {"groupoid", "arity", "base", "table": [{"monomial": [slots], "block"}]}.
/// Pair blocks are flat vectors, bundle blocks are matrices. Missing table
/// entries are zero except the empty monomial, which defaults to the origin
/// value (base column or identity).
Json microcube_to_json(const Microcube& cube);
Microcube microcube_from_json(const Json& j, const ContextPtr& context);

/// Classical forms only: {"degree", "fiber_dim", "base_dim", "terms":
/// [{"index": [...], "matrix": [[polynomial strings]]}]}. `base_dim` may be
/// omitted when a default is supplied. The planted invalid form is written
/// as {"kind": "planted_invalid", "degree": 1, "fiber_dim"} so residue
/// witnesses can be replayed.
Json form_to_json(const DifferentialForm& form);
DifferentialForm form_from_json(const Json& j, std::size_t default_base_dim = 0);

/// {"kind": "trivial"|"adjoint"|"gauge", "gauge": [[polynomial strings]]}.
Json representation_to_json(const Representation& rho);
Representation representation_from_json(const Json& j, std::size_t base_dim, std::size_t fiber_dim);

/// Parses TOML text into the JSON model.
Json parse_toml(std::string_view text, std::string_view source_name = "<toml>");
/// Reads a .toml file through parse_toml and anything else as JSON.
/// Throws InputError on unreadable or malformed input.
Json load_document(const std::filesystem::path& path);

}  // namespace sdg
