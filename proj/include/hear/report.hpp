#pragma once

#include "hear/context.hpp"
#include "hear/legal.hpp"
#include "hear/persona.hpp"
#include "hear/prompts.hpp"
#include "hear/provider.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace hear {

inline constexpr std::string_view kPipelineVersion = "0.1.0";

struct Provenance {
  std::string model_name;
  double temperature = 0.1;
  std::array<std::string, 3> prompt_digests;
  std::string timestamp;
  std::string pipeline_version{kPipelineVersion};
};

struct HearReport {
  RawViolation violation;
  Persona persona;
  std::string jurisdiction;
  std::array<LayerOutput, 3> layers;
  std::vector<LegalClause> clauses;
  /// Titles of the criteria the clauses reference; part of the audit whitelist.
  std::map<std::string, std::string> criterion_titles;
  Rect crop_rect;
  std::string crop_file;
  std::string assembled_markdown;
  Provenance provenance;
  /// The three prompts, kept in memory for optional dumping.
  std::vector<Prompt> prompts;
};

struct GenerateOptions {
  std::string jurisdiction;
  /// Every instrument name the KB knows; used for the citation-closure check.
  std::vector<std::string> known_instruments;
  std::map<std::string, std::string> criterion_titles;
  /// Returns an ISO-8601 timestamp; defaults to the UTC wall clock.
  std::function<std::string()> clock;
  Sleeper sleep;
};

std::string utc_timestamp();

/// Runs layers 1 -> 2 -> 3, each consuming the previous output verbatim, then
/// assembles the markdown. Any layer failure is rethrown with the layer
/// index and no report is produced. Throws CitationOutsideKb if the
/// markdown names a known instrument that was not retrieved.
HearReport generate_report(const RawViolation& violation, const GroundedContext& ctx,
                           const Persona& persona, const std::vector<LegalClause>& clauses,
                           const ProviderConfig& cfg, ModelProvider& provider,
                           const GenerateOptions& options = {});

std::string render_markdown(const HearReport& report);

/// Instruments from `known` named in `markdown` but absent from `clauses`.
std::vector<std::string> uncited_instruments(const std::string& markdown,
                                             const std::vector<LegalClause>& clauses,
                                             const std::vector<std::string>& known);

nlohmann::json report_to_json(const HearReport& report);
/// Throws SchemaError.
HearReport report_from_json(const nlohmann::json& j);

nlohmann::json prompts_to_json(const std::vector<Prompt>& prompts);

}  // namespace hear
