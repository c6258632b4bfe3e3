#pragma once

#include <stdexcept>
#include <string>

namespace maxcov {

// Bad arguments or malformed input data (indices out of range, bad files).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A closed-form evaluator was called outside the domain where it is defined.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A computation would exceed a configured size or work budget.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace maxcov
