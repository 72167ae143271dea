#pragma once

// Differential n-forms on microcubes with values in k x k matrices.
//
// A classical form is a sum of terms A_K dx^K: K = (k_1 < ... < k_n) picks
// coordinates of the first-order data v_r = first_order(slot r) of the cube,
// A_K is a polynomial matrix in the base coordinates, and
//
//   omega(gamma) = sum_K A_K(base) * det[ v_r[k_c] ]_{r,c}.
//
// Coordinates are the m target components on the pair groupoid and the k^2
// row-major Lie-algebra entries on the bundle groupoid. A degree-0 form has a
// single term with an empty index. Operator outputs are custom forms whose
// evaluator runs the extraction pipeline on each call.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdg/groupoid.hpp"
#include "sdg/polynomial.hpp"
#include "sdg/random.hpp"

namespace sdg {

class DifferentialForm {
 public:
  using Evaluator = std::function<WeilMatrix(const Microcube&)>;

  struct Term {
    std::vector<std::size_t> index;  // 0-based, strictly increasing
    MatrixPolynomial coefficient;

    friend bool operator==(const Term&, const Term&) = default;
  };

  static DifferentialForm classical(std::size_t degree, std::size_t fiber_dim, std::size_t base_dim,
                                    std::vector<Term> terms);
  static DifferentialForm zero_form(MatrixPolynomial section);
  static DifferentialForm custom(std::size_t degree, std::size_t fiber_dim, std::string description,
                                 Evaluator evaluator);

  std::size_t degree() const noexcept { return impl_->degree; }
  std::size_t fiber_dim() const noexcept { return impl_->fiber_dim; }
  bool is_classical() const noexcept { return !impl_->evaluator; }
  /// Base dimension the coefficients are polynomial in (classical forms).
  std::size_t base_dim() const noexcept { return impl_->base_dim; }
  const std::vector<Term>& terms() const noexcept { return impl_->terms; }
  const std::string& description() const noexcept { return impl_->description; }

  /// Throws std::invalid_argument when arity != degree.
  WeilMatrix evaluate(const Microcube& cube) const;

 private:
  struct Impl {
    std::size_t degree = 0;
    std::size_t fiber_dim = 0;
    std::size_t base_dim = 0;
    std::vector<Term> terms;
    std::string description;
    Evaluator evaluator;
  };
  explicit DifferentialForm(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;
};

inline WeilMatrix eval_form(const DifferentialForm& form, const Microcube& cube) { return form.evaluate(cube); }

/// Degree-1 form that is not a form: omega(gamma) = (sum of all coefficients
/// of v_1[0])^2 * I. On rational cubes it reads first-order data only, but it
/// is quadratic in the slot and collapses ambient generators, so it violates
/// homogeneity and naturality and d_plus of it cannot be extracted.
DifferentialForm planted_invalid_form(std::size_t fiber_dim);

struct FormViolation {
  std::string property;
  Microcube cube;
  WeilMatrix lhs;
  WeilMatrix rhs;
};

struct FormCheckConfig {
  GroupoidKind groupoid = GroupoidKind::Pair;
  std::size_t base_dim = 2;
  std::uint64_t seed = 0;
  std::size_t trials = 10;
  long bound = 3;
};

/// Homogeneity per axis, alternation under a random permutation, naturality
/// under substitution of an ambient parameter, and the phi conditions, on
/// random cubes. Degree-0 forms only get the naturality test.
std::vector<FormViolation> validate_form(const DifferentialForm& form, const FormCheckConfig& cfg);

/// The three conditions on phi(gamma, d) = omega(gamma)_{d_1...d_n}, in both
/// the multiplicative reading (tangent_eval, inverse for odd permutations) and
/// the additive one (d_1...d_n omega(gamma)). Requires degree >= 1.
std::vector<FormViolation> check_phi_conditions(const DifferentialForm& form, const Microcube& cube, Rng& rng);

}  // namespace sdg
