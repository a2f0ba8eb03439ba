#pragma once

// Jurisdiction-keyed legal and standards clauses for compliance grounding.

#include "hear/scanner.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hear {

struct LegalClause {
  std::string jurisdiction;
  std::string instrument;
  std::string clause_id;
  std::vector<std::string> wcag_criteria;
  std::string requirement_text;
  std::string risk_text;
  std::string source_url;
};

struct LegalKb {
  std::vector<LegalClause> clauses;
  /// WCAG success-criterion id -> title, e.g. "2.5.5" -> "Target Size".
  std::map<std::string, std::string> criterion_titles;

  /// Distinct instrument names in KB order.
  std::vector<std::string> instruments() const;
};

/// Empty or whitespace-only input yields an empty KB. Throws KbSchemaError.
LegalKb load_legal_kb(std::string_view json_text);

/// Throws UnmatchableCategory for Other.
std::vector<std::string> map_category_to_criteria(const ViolationCategory& category);

/// Clauses in `jurisdiction` sharing at least one criterion, in KB order.
/// Throws NoApplicableClause when nothing matches.
std::vector<LegalClause> retrieve_clauses(const std::vector<LegalClause>& kb,
                                          std::string_view jurisdiction,
                                          const std::vector<std::string>& criteria);

/// Run-level flag wins over the persona's location.
std::string resolve_jurisdiction(const std::optional<std::string>& run_flag,
                                 std::string_view persona_loc);

}  // namespace hear
