#include "hear/error.hpp"

namespace hear {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedBounds: return "MalformedBounds";
    case ErrorCode::DegenerateBounds: return "DegenerateBounds";
    case ErrorCode::NegativeCoordinate: return "NegativeCoordinate";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::BoundsOutsideScreen: return "BoundsOutsideScreen";
    case ErrorCode::MalformedHierarchy: return "MalformedHierarchy";
    case ErrorCode::TargetNotFound: return "TargetNotFound";
    case ErrorCode::CropOutOfBounds: return "CropOutOfBounds";
    case ErrorCode::ImageDecodeError: return "ImageDecodeError";
    case ErrorCode::RegistrySchemaError: return "RegistrySchemaError";
    case ErrorCode::IncompleteCoverage: return "IncompleteCoverage";
    case ErrorCode::UnmatchableCategory: return "UnmatchableCategory";
    case ErrorCode::UnknownPersonaName: return "UnknownPersonaName";
    case ErrorCode::KbSchemaError: return "KbSchemaError";
    case ErrorCode::NoApplicableClause: return "NoApplicableClause";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::EmptyClauseSet: return "EmptyClauseSet";
    case ErrorCode::ProviderAuthError: return "ProviderAuthError";
    case ErrorCode::ProviderTimeout: return "ProviderTimeout";
    case ErrorCode::ProviderError: return "ProviderError";
    case ErrorCode::EmptyCompletion: return "EmptyCompletion";
    case ErrorCode::CitationOutsideKb: return "CitationOutsideKb";
    case ErrorCode::AlreadyAnnotated: return "AlreadyAnnotated";
    case ErrorCode::MissingHierarchy: return "MissingHierarchy";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     std::optional<std::size_t> record_index) {
  std::string out(to_string(code));
  if (record_index) out += " (record " + std::to_string(*record_index) + ")";
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> record_index)
    : std::runtime_error(decorate(code, message, record_index)),
      code_(code),
      record_index_(record_index) {}

}  // namespace hear
