#pragma once

#include <stdexcept>

namespace atlas {

// Input violates a documented precondition (malformed permutation, degree
// mismatch, odd order where an even one is required, ...).  CLI exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request is well formed but exceeds a configured size budget.  CLI exit code 3.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two routes that must agree produced different answers.  CLI exit code 4.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace atlas
