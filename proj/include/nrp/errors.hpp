#pragma once

#include <stdexcept>
#include <string>

namespace nrp {

/// Malformed domain values or arguments that violate a documented precondition.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text that does not conform to the instance or config file formats.
/// Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Raised when an exhaustive operation is asked to run above its size cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a partial assignment cannot be applied to an instance,
/// e.g. the fixed-in customers alone already exceed the budget.
class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Semantically invalid generator configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nrp
