#pragma once

#include <stdexcept>
#include <string>

namespace percolab {

enum class ErrorCode {
  EmptyDomain,
  NotJordan,
  CoincidentSplitPoints,
  BadSplitPoints,
  AmbiguousComponent,
  PastingError,
  NonTermination,
  DegenerateArc,
  DegenerateDenominator,
  ToleranceNotReached,
  PoleAtMinusOne,
  OrderViolation,
  StepTooLarge,
  NonPositiveIncrement,
  InsufficientData,
  ConfigError,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace percolab
