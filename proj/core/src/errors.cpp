#include "gsnforge/errors.hpp"

namespace gsnforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kUnknownPredicate: return "UnknownPredicate";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kMalformedCardinality: return "MalformedCardinality";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kMultipleRoots: return "MultipleRoots";
    case ErrorCode::kUnreachableElement: return "UnreachableElement";
    case ErrorCode::kParseFailed: return "ParseFailed";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kNotATree: return "NotATree";
    case ErrorCode::kMissingBinding: return "MissingBinding";
    case ErrorCode::kCountViolatesLabel: return "CountViolatesLabel";
    case ErrorCode::kSelectionViolatesLabel: return "SelectionViolatesLabel";
    case ErrorCode::kUnresolvedUndevelopment: return "UnresolvedUndevelopment";
    case ErrorCode::kDanglingAfterDrop: return "DanglingAfterDrop";
    case ErrorCode::kInvalidPlan: return "InvalidPlan";
    case ErrorCode::kConfigBundleMismatch: return "ConfigBundleMismatch";
    case ErrorCode::kDatasetIncomplete: return "DatasetIncomplete";
    case ErrorCode::kInvalidMatrix: return "InvalidMatrix";
    case ErrorCode::kAuthMissing: return "AuthMissing";
    case ErrorCode::kEndpointUnreachable: return "EndpointUnreachable";
    case ErrorCode::kInvalidModelSpec: return "InvalidModelSpec";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kAllTied: return "AllTied";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

SourceError::SourceError(ErrorCode code, std::size_t line, std::size_t column,
                         const std::string& message)
    : Error(code, std::to_string(line) + ":" + std::to_string(column) + ": " +
                      message),
      line_(line),
      column_(column) {}

}  // namespace gsnforge
