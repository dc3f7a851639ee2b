#pragma once

#include <stdexcept>
#include <string>

namespace sigmagcd {

// Requested work exceeds a configured table or memory budget.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact-arithmetic invariant failed during a computation (g does not divide n, ...).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid arguments use std::invalid_argument, domain failures std::domain_error.

}  // namespace sigmagcd
