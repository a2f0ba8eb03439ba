#include "hear/persona.hpp"

#include "hear/error.hpp"

#include <nlohmann/json.hpp>

#include <regex>

#include <fmt/format.h>

namespace hear {

using json = nlohmann::json;

namespace {

constexpr std::string_view kMatchable[] = {"TouchTargetSize", "ContentLabeling", "ContrastRatio"};

[[noreturn]] void schema_error(const std::string& message) {
  throw Error(ErrorCode::RegistrySchemaError, message);
}

std::string required_string(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    schema_error(fmt::format("{}: missing string field '{}'", where, key));
  }
  auto value = obj[key].get<std::string>();
  if (value.empty()) schema_error(fmt::format("{}: field '{}' is empty", where, key));
  return value;
}

PersonaConstraint parse_constraint(const json& j, const std::string& where) {
  PersonaConstraint c;
  if (j.is_string()) {
    c.text = j.get<std::string>();
  } else if (j.is_object()) {
    c.text = required_string(j, "text", where);
    if (j.contains("params")) {
      if (!j["params"].is_object()) schema_error(where + ": params must be an object");
      for (const auto& [key, value] : j["params"].items()) {
        if (!value.is_number()) schema_error(fmt::format("{}: param '{}' not numeric", where, key));
        c.params[key] = value.get<double>();
      }
    }
  } else {
    schema_error(where + ": constraint must be a string or object");
  }
  if (c.text.empty()) schema_error(where + ": constraint text is empty");
  return c;
}

Persona parse_persona(const json& j, std::size_t index) {
  const std::string where = fmt::format("personas[{}]", index);
  if (!j.is_object()) schema_error(where + ": not an object");
  static const std::regex loc_re("^[A-Z]{2}$");
  static const std::regex criterion_re(R"(^\d+\.\d+\.\d+$)");

  Persona p;
  p.name = required_string(j, "name", where);
  if (!j.contains("age") || !j["age"].is_number_integer() || j["age"].get<int>() <= 0) {
    schema_error(where + ": age must be a positive integer");
  }
  p.age = j["age"].get<int>();
  p.loc = required_string(j, "loc", where);
  if (!std::regex_match(p.loc, loc_re)) schema_error(where + ": loc must be ISO 3166-1 alpha-2");
  p.condition = required_string(j, "condition", where);
  p.psychology = required_string(j, "psychology", where);
  p.logic = required_string(j, "logic", where);

  if (!j.contains("constraints") || !j["constraints"].is_array() || j["constraints"].empty()) {
    schema_error(where + ": constraints must be a non-empty array");
  }
  for (const auto& c : j["constraints"]) p.constraints.push_back(parse_constraint(c, where));

  if (!j.contains("wcag_criteria") || !j["wcag_criteria"].is_array() ||
      j["wcag_criteria"].empty()) {
    schema_error(where + ": wcag_criteria must be a non-empty array");
  }
  for (const auto& c : j["wcag_criteria"]) {
    if (!c.is_string() || !std::regex_match(c.get<std::string>(), criterion_re)) {
      schema_error(where + ": wcag criterion ids look like 2.5.5");
    }
    p.wcag_criteria.push_back(c.get<std::string>());
  }
  p.provenance = j.value("provenance", std::string{});
  return p;
}

}  // namespace

const Persona* PersonaRegistry::find(std::string_view name) const {
  for (const auto& p : entries) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

PersonaRegistry load_registry(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    schema_error(e.what());
  }
  if (!doc.is_object()) schema_error("registry must be a JSON object");
  if (!doc.contains("personas") || !doc["personas"].is_array()) {
    schema_error("missing 'personas' array");
  }
  if (!doc.contains("mapping") || !doc["mapping"].is_object()) {
    schema_error("missing 'mapping' object");
  }

  PersonaRegistry registry;
  for (std::size_t i = 0; i < doc["personas"].size(); ++i) {
    Persona p = parse_persona(doc["personas"][i], i);
    if (registry.find(p.name)) schema_error(fmt::format("duplicate persona '{}'", p.name));
    registry.entries.push_back(std::move(p));
  }

  for (const auto& [category, names] : doc["mapping"].items()) {
    if (std::find(std::begin(kMatchable), std::end(kMatchable), category) == std::end(kMatchable)) {
      schema_error(fmt::format("mapping key '{}' is not a matchable category", category));
    }
    if (!names.is_array()) schema_error(fmt::format("mapping['{}'] must be an array", category));
    auto& list = registry.mapping[category];
    for (const auto& n : names) {
      if (!n.is_string()) schema_error(fmt::format("mapping['{}'] holds a non-string", category));
      const auto name = n.get<std::string>();
      if (!registry.find(name)) {
        schema_error(fmt::format("mapping['{}'] names unknown persona '{}'", category, name));
      }
      list.push_back(name);
    }
  }

  for (auto category : kMatchable) {
    auto it = registry.mapping.find(std::string(category));
    const std::size_t n = it == registry.mapping.end() ? 0 : it->second.size();
    if (n < 2) {
      throw Error(ErrorCode::IncompleteCoverage,
                  fmt::format("{} maps to {} persona(s); at least 2 required", category, n));
    }
  }
  return registry;
}

std::vector<Persona> match_personas(const PersonaRegistry& registry,
                                    const ViolationCategory& category) {
  if (!is_matchable(category)) {
    throw Error(ErrorCode::UnmatchableCategory, category_name(category));
  }
  std::vector<Persona> out;
  auto it = registry.mapping.find(category_name(category));
  if (it != registry.mapping.end()) {
    for (const auto& name : it->second) out.push_back(*registry.find(name));
  }
  return out;
}

SelectionPolicy parse_selection_policy(std::string_view text) {
  if (text == "deterministic") return DeterministicPolicy{};
  if (text == "first") return FirstPolicy{};
  if (text.starts_with("named:") && text.size() > 6) return NamedPolicy{std::string(text.substr(6))};
  throw Error(ErrorCode::SchemaError, fmt::format("unknown persona policy \"{}\"", text));
}

std::string to_string(const SelectionPolicy& policy) {
  if (std::holds_alternative<DeterministicPolicy>(policy)) return "deterministic";
  if (std::holds_alternative<FirstPolicy>(policy)) return "first";
  return "named:" + std::get<NamedPolicy>(policy).name;
}

Persona select_persona(const std::vector<Persona>& candidates, std::string_view violation_id,
                       const SelectionPolicy& policy) {
  if (candidates.empty()) throw Error(ErrorCode::PreconditionViolation, "no candidate personas");

  if (const auto* named = std::get_if<NamedPolicy>(&policy)) {
    for (const auto& p : candidates) {
      if (p.name == named->name) return p;
    }
    throw Error(ErrorCode::UnknownPersonaName, named->name);
  }
  if (std::holds_alternative<FirstPolicy>(policy)) return candidates.front();

  const std::string prefix(violation_id.substr(0, 8));
  std::uint64_t value = 0;
  try {
    value = std::stoull(prefix, nullptr, 16);
  } catch (const std::exception&) {
    throw Error(ErrorCode::PreconditionViolation,
                fmt::format("violation id \"{}\" does not start with hex digits", violation_id));
  }
  return candidates[value % candidates.size()];
}

}  // namespace hear
