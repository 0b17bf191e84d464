#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fnlse {

/// Argument outside the mathematical domain of an operation (x <= 0 under a
/// log transform, N <= n - 1 for a root function, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A value object was constructed with parameters that break its invariants.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sequence lengths or indices that do not line up.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Braun-type ratios are undefined on a constant sequence.
class DegenerateVariance : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Failure-time input that could not be read.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}

  /// 1-based line (or entry) number; 0 when not tied to a position.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fnlse
