#pragma once

// Hallucination audit over generated reports: automated visual-grounding and
// textual-fidelity checks plus a manual functional-logic worksheet.

#include "hear/hierarchy.hpp"
#include "hear/report.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

namespace hear {

enum class Outcome { Pass, Fail, Pending };

std::string_view to_string(Outcome outcome) noexcept;
Outcome outcome_from_string(std::string_view text);

struct GroundingResult {
  Outcome outcome = Outcome::Pending;
  std::string evidence;
};

struct FidelityResult {
  Outcome outcome = Outcome::Pending;
  std::vector<std::string> offending_quotes;
};

struct AuditVerdict {
  std::string violation_id;
  std::string screen_id;
  GroundingResult visual_grounding;
  FidelityResult textual_fidelity;
  Outcome functional_logic = Outcome::Pending;
  std::string annotator;
  bool hallucination = false;

  /// hallucination = any dimension failed.
  void recompute();
};

/// Quoted spans in straight or typographic quotes, outermost first.
/// Apostrophes inside words are not treated as quotes.
std::vector<std::string> extract_quotes(std::string_view text);

/// Role words from the fixed vocabulary that `text` attributes to an element
/// through a determiner ("a button", "the \"Follow\" button").
std::vector<std::string> attributed_roles(std::string_view text);

GroundingResult check_visual_grounding(const HearReport& report, const ViewNode& root);

/// Strings a report may quote without them appearing in the slice.
std::vector<std::string> fidelity_whitelist(const HearReport& report);

FidelityResult check_textual_fidelity(const HearReport& report, const SemanticSlice& slice);

/// Throws AlreadyAnnotated unless functional_logic is pending, and
/// PreconditionViolation for a Pending decision.
AuditVerdict record_functional_logic(AuditVerdict verdict, Outcome decision,
                                     const std::string& annotator);

struct AuditSummary {
  std::size_t reports = 0;
  std::size_t visual_grounding_failures = 0;
  std::size_t textual_fidelity_failures = 0;
  std::size_t functional_pending = 0;
  std::size_t functional_pass = 0;
  std::size_t functional_fail = 0;
  std::size_t hallucinations = 0;
};

struct AuditBatch {
  std::vector<AuditVerdict> verdicts;
  AuditSummary summary;
};

/// Key "*" in `hierarchies` applies to any screen without its own entry.
AuditBatch audit_batch(const std::vector<HearReport>& reports,
                       const std::map<std::string, ViewNode>& hierarchies);

AuditSummary summarize(const std::vector<AuditVerdict>& verdicts);

nlohmann::json verdict_to_json(const AuditVerdict& verdict);
AuditVerdict verdict_from_json(const nlohmann::json& j);
nlohmann::json summary_to_json(const AuditSummary& summary);

}  // namespace hear
