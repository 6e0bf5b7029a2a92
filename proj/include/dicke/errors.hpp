#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

/// Parameters or arguments outside their physical or structural domain.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A formula evaluated outside the regime where it is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Eigensolver or kernel failure; `what()` carries the diagnostics.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every sample of a precision scan fell below the numerical floor.
class NothingToFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dicke
