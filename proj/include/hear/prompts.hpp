#pragma once

// Three-layer chained prompts: physical barrier, functional blockage and
// legal/compliance grounding.

#include "hear/context.hpp"
#include "hear/legal.hpp"
#include "hear/persona.hpp"
#include "hear/scanner.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hear {

struct Prompt {
  int layer = 1;
  std::string system_text;
  std::string user_text;
  /// PNG-encoded crop, attached to layer 1 only.
  std::optional<std::vector<std::uint8_t>> image_png;
  /// Structured copy of the values rendered into user_text. Live providers
  /// ignore it; the offline mock renders its templates from it.
  nlohmann::json fields = nlohmann::json::object();

  /// SHA-256 over layer, system text, user text and image bytes.
  std::string digest() const;
};

struct LayerOutput {
  int layer = 1;
  std::string text;
  /// Layer 3 only; always a subset of the retrieved clause ids.
  std::vector<std::string> cited_clause_ids;
};

/// Human-readable location for a jurisdiction code ("JP" -> "Japan").
std::string jurisdiction_name(std::string_view code);

/// Formats dp/ratio values: integers bare, otherwise two decimals.
std::string format_quantity(double value);

/// Throws PreconditionViolation when the slice rendering is empty or the
/// context belongs to a different violation.
Prompt build_layer1_prompt(const Persona& persona, const GroundedContext& ctx,
                           const RawViolation& violation);

/// Throws PreconditionViolation unless `layer1.layer == 1`.
Prompt build_layer2_prompt(const LayerOutput& layer1, const GroundedContext& ctx,
                           const RawViolation& violation);

/// Throws EmptyClauseSet, or PreconditionViolation unless `layer2.layer == 2`.
Prompt build_layer3_prompt(const LayerOutput& layer2, const std::vector<LegalClause>& clauses,
                           const Persona& persona,
                           const std::map<std::string, std::string>& criterion_titles = {},
                           const std::vector<std::string>& violated_criteria = {});

}  // namespace hear
