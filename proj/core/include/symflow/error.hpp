#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symflow {

enum class ErrorCode {
  InvalidGraph,
  NotPrimitive,
  MissingEdge,
  InvalidTree,
  MissingChordValue,
  MissingEdgeWeight,
  MissingEdgeValue,
  NoMeridians,
  DimensionMismatch,
  NonConvergence,
  OutsideCone,
  DegenerateModel,
  SingularHessian,
  BudgetExceeded,
  RoofNotUnit,
  EmptySelection,
  InfiniteQuotient,
  Overflow,
  SyntaxError,
  ValidationError,
  UnknownModel,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` tells callers (and the
/// CLI's exit-code mapping) which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace symflow
