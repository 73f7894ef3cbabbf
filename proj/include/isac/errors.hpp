#pragma once
#include <stdexcept>
#include <string>

namespace isac {

// Bad parameter values, inconsistent configuration, preconditions violated
// by caller input. CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A structural property the simulator guarantees was found broken
// (schedule separation, bound dominance, route consistency). Exit code 2.
class InvariantViolation : public std::runtime_error {
 public:
  explicit InvariantViolation(const std::string& msg)
      : std::runtime_error(msg) {}
};

// Numeric domain problems detected at run time (distance below the
// far-field floor, divergent series requests, degenerate instances).
// Exit code 3 unless it is clearly a configuration problem.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace isac
