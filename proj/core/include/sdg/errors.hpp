#pragma once

#include <stdexcept>
#include <string>

namespace sdg {

/// A value that should be a pure multiple of a target monomial has support
/// elsewhere. Raised by coefficient extraction; for operator evaluation this
/// means an input form or representation violates its axioms.
class ResidueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument that must square to zero does not.
class NilpotencyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Generators from two different contexts were combined, or a context ran out
/// of generator slots.
class ContextError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed instance/config files and shape mismatches in user input.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sdg
