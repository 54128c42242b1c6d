#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gsnforge {

/// Every failure raised by the library carries one of these codes.
enum class ErrorCode {
  // predicate codec
  kSyntaxError,
  kUnknownPredicate,
  kDuplicateId,
  kDanglingReference,
  kArityMismatch,
  kMalformedCardinality,
  // graph structure
  kCycleDetected,
  kMultipleRoots,
  kUnreachableElement,
  // prose codec
  kParseFailed,
  kEmptyInput,
  kNotATree,
  // instantiator
  kMissingBinding,
  kCountViolatesLabel,
  kSelectionViolatesLabel,
  kUnresolvedUndevelopment,
  kDanglingAfterDrop,
  kInvalidPlan,
  // prompt engine / dataset
  kConfigBundleMismatch,
  kDatasetIncomplete,
  kInvalidMatrix,
  // llm gateway
  kAuthMissing,
  kEndpointUnreachable,
  kInvalidModelSpec,
  // metrics
  kLengthMismatch,
  kAllTied,
  kInvalidArgument,
  kIo,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A codec error that points into the source text (1-based line and column).
class SourceError : public Error {
 public:
  SourceError(ErrorCode code, std::size_t line, std::size_t column,
              const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace gsnforge
