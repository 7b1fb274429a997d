#pragma once

#include <stdexcept>
#include <string>

namespace matchstream {

// Malformed graph or matching structure (self-loop, parallel edge, non-alternating walk, ...).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad numeric parameter or option value.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unreadable or malformed input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Strict memory meter went over budget.
class BudgetViolation : public std::runtime_error {
 public:
  BudgetViolation(const std::string& module, const std::string& what)
      : std::runtime_error(what), module_(module) {}
  const std::string& module() const { return module_; }

 private:
  std::string module_;
};

// Exact oracle asked to solve an instance beyond its configured size.
class OracleOversize : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Too many good pairs to enumerate.
class EnumerationGuard : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace matchstream
