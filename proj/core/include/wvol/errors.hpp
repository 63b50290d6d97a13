#pragma once

#include <stdexcept>
#include <string>

namespace wvol {

// Rejected input: precondition or schema violation.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Principal curvature -1 somewhere: 1 + tr B + det B vanishes.
class DegenerateImmersion : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NotEmbedded : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wvol
