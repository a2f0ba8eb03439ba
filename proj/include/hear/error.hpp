#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hear {

enum class ErrorCode {
  // scanner-ingest
  MalformedBounds,
  DegenerateBounds,
  NegativeCoordinate,
  SchemaError,
  BoundsOutsideScreen,
  // ui-context
  MalformedHierarchy,
  TargetNotFound,
  CropOutOfBounds,
  ImageDecodeError,
  // persona-engine
  RegistrySchemaError,
  IncompleteCoverage,
  UnmatchableCategory,
  UnknownPersonaName,
  // legal-kb
  KbSchemaError,
  NoApplicableClause,
  // narrative-pipeline
  PreconditionViolation,
  EmptyClauseSet,
  ProviderAuthError,
  ProviderTimeout,
  ProviderError,
  EmptyCompletion,
  CitationOutsideKb,
  // audit
  AlreadyAnnotated,
  MissingHierarchy,
  // plumbing
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> record_index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  /// Index of the offending input record, when the error is tied to one.
  std::optional<std::size_t> record_index() const noexcept { return record_index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> record_index_;
};

}  // namespace hear
