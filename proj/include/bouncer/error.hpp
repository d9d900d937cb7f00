#pragma once

#include <stdexcept>
#include <string>

namespace bouncer {

// Bad arguments or configuration supplied by the caller.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation (x < 0 for an
// eigenfunction, t outside a drive program, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Argument outside the range an algorithm has been validated for.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A numerical routine failed to meet its own accuracy contract.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bouncer
