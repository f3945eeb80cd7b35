#pragma once

#include <stdexcept>
#include <string>

namespace mathieu {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Inconsistent configuration (truncation orders, thresholds, ...).
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A quantity left the range of double precision (under/overflow of a
/// prefactor, vanishing normalizer).  Callers may fall back to another route.
class PrecisionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A series did not meet its stopping rule before its cap.
class TruncationError : public std::runtime_error {
public:
  TruncationError(const std::string& what, double last_term)
      : std::runtime_error(what), last_term_(last_term) {}
  double last_term() const noexcept { return last_term_; }

private:
  double last_term_;
};

/// Field point coincides with the source of a Green function.
class SingularityError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

}  // namespace mathieu
