#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gardinglab {

/// Argument outside the mathematical domain of an operation (index out of
/// range, infeasible budget, malformed parameter).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative numerical routine failed to reach its convergence criterion.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data violates a structural invariant (tensor symmetries, matrix
/// symmetry).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Text input could not be parsed. Carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gardinglab
