#include "symflow/error.hpp"

namespace symflow {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::MissingEdge: return "MissingEdge";
    case ErrorCode::InvalidTree: return "InvalidTree";
    case ErrorCode::MissingChordValue: return "MissingChordValue";
    case ErrorCode::MissingEdgeWeight: return "MissingEdgeWeight";
    case ErrorCode::MissingEdgeValue: return "MissingEdgeValue";
    case ErrorCode::NoMeridians: return "NoMeridians";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::OutsideCone: return "OutsideCone";
    case ErrorCode::DegenerateModel: return "DegenerateModel";
    case ErrorCode::SingularHessian: return "SingularHessian";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::RoofNotUnit: return "RoofNotUnit";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::InfiniteQuotient: return "InfiniteQuotient";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownModel: return "UnknownModel";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace symflow
