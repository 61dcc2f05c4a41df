#pragma once

#include <stdexcept>
#include <string>

namespace qcl {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Matrix does not have the structure required for the requested kind.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid combination of optional arguments (e.g. f given for a unital kind).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Runtime diagnostic, e.g. an exhausted rejection-sampling iteration cap.
class DiagnosticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcl
