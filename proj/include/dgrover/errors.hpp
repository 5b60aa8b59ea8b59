#pragma once

#include <stdexcept>
#include <string>

namespace dgrover {

/// Argument outside the mathematical domain of an operation (e.g. λ ∉ (0,1)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Geometric quantity undefined at the given inputs (zero-length arc, undefined axis).
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class LengthMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Root finder exhausted its iteration and restart budget.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace dgrover
