#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace congruence {

/// Machine-readable failure reasons. The CLI maps these onto exit codes.
enum class ErrorCode {
  InvalidArgument,
  ShapeMismatch,
  MixedFields,
  DivisionByZero,
  NoSquareRoot,
  NegativeDegree,
  Singular,
  DependentColumns,
  NoSolution,
  BudgetExceeded,
  UnsupportedField,
  NotFound,
  RankPrecondition,
  HypothesisViolation,
  VerificationFailed,
  TowerTooDeep,
  MalformedInput,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace congruence
