#pragma once

// Ability-based persona registry and per-violation persona matching.

#include "hear/scanner.hpp"

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hear {

/// A physical constraint in prose, with any quantitative parameters broken
/// out (e.g. `tap_deviation_px: 40`).
struct PersonaConstraint {
  std::string text;
  std::map<std::string, double> params;
};

struct Persona {
  std::string name;
  int age = 0;
  std::string loc;  // ISO 3166-1 alpha-2
  std::string condition;
  std::vector<PersonaConstraint> constraints;
  std::string psychology;
  std::string logic;
  std::vector<std::string> wcag_criteria;
  /// Where the persona came from; informational only.
  std::string provenance;
};

struct PersonaRegistry {
  std::vector<Persona> entries;
  /// Keyed by category_name(); values are persona names in registry order.
  std::map<std::string, std::vector<std::string>> mapping;

  const Persona* find(std::string_view name) const;
};

/// Throws RegistrySchemaError or IncompleteCoverage.
PersonaRegistry load_registry(std::string_view json_text);

/// Throws UnmatchableCategory for Other.
std::vector<Persona> match_personas(const PersonaRegistry& registry,
                                    const ViolationCategory& category);

struct DeterministicPolicy {};
struct FirstPolicy {};
struct NamedPolicy {
  std::string name;
};
using SelectionPolicy = std::variant<DeterministicPolicy, FirstPolicy, NamedPolicy>;

/// "deterministic", "first" or "named:<NAME>". Throws SchemaError.
SelectionPolicy parse_selection_policy(std::string_view text);
std::string to_string(const SelectionPolicy& policy);

/// Throws UnknownPersonaName, or PreconditionViolation on empty candidates.
Persona select_persona(const std::vector<Persona>& candidates, std::string_view violation_id,
                       const SelectionPolicy& policy);

}  // namespace hear
