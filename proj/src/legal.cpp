#include "hear/legal.hpp"

#include "hear/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>

#include <fmt/format.h>

namespace hear {

using json = nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& message) {
  throw Error(ErrorCode::KbSchemaError, message);
}

std::string required_string(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_string() || obj[key].get<std::string>().empty()) {
    schema_error(fmt::format("{}: '{}' must be a non-empty string", where, key));
  }
  return obj[key].get<std::string>();
}

}  // namespace

std::vector<std::string> LegalKb::instruments() const {
  std::vector<std::string> out;
  for (const auto& c : clauses) {
    if (std::find(out.begin(), out.end(), c.instrument) == out.end()) out.push_back(c.instrument);
  }
  return out;
}

LegalKb load_legal_kb(std::string_view json_text) {
  LegalKb kb;
  if (std::all_of(json_text.begin(), json_text.end(),
                  [](unsigned char c) { return std::isspace(c); })) {
    return kb;
  }
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    schema_error(e.what());
  }
  if (!doc.is_object()) schema_error("legal KB must be a JSON object");

  if (doc.contains("criteria")) {
    if (!doc["criteria"].is_object()) schema_error("'criteria' must be an object");
    for (const auto& [id, title] : doc["criteria"].items()) {
      if (!title.is_string()) schema_error(fmt::format("criteria['{}'] must be a string", id));
      kb.criterion_titles[id] = title.get<std::string>();
    }
  }

  const json clauses = doc.value("clauses", json::array());
  if (!clauses.is_array()) schema_error("'clauses' must be an array");
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const auto& j = clauses[i];
    const std::string where = fmt::format("clauses[{}]", i);
    if (!j.is_object()) schema_error(where + ": not an object");
    LegalClause c;
    c.jurisdiction = required_string(j, "jurisdiction", where);
    c.instrument = required_string(j, "instrument", where);
    c.clause_id = required_string(j, "clause_id", where);
    c.requirement_text = required_string(j, "requirement_text", where);
    c.risk_text = required_string(j, "risk_text", where);
    c.source_url = j.value("source_url", std::string{});
    if (!j.contains("wcag_criteria") || !j["wcag_criteria"].is_array() ||
        j["wcag_criteria"].empty()) {
      schema_error(where + ": wcag_criteria must be a non-empty array");
    }
    for (const auto& id : j["wcag_criteria"]) {
      if (!id.is_string()) schema_error(where + ": wcag_criteria holds a non-string");
      c.wcag_criteria.push_back(id.get<std::string>());
    }
    kb.clauses.push_back(std::move(c));
  }
  return kb;
}

std::vector<std::string> map_category_to_criteria(const ViolationCategory& category) {
  if (std::holds_alternative<TouchTargetSize>(category)) return {"2.5.5"};
  if (std::holds_alternative<ContentLabeling>(category)) return {"1.1.1", "4.1.2"};
  if (std::holds_alternative<ContrastRatio>(category)) return {"1.4.3"};
  throw Error(ErrorCode::UnmatchableCategory, category_name(category));
}

std::vector<LegalClause> retrieve_clauses(const std::vector<LegalClause>& kb,
                                          std::string_view jurisdiction,
                                          const std::vector<std::string>& criteria) {
  if (criteria.empty()) throw Error(ErrorCode::PreconditionViolation, "no criteria to retrieve");
  std::vector<LegalClause> out;
  for (const auto& clause : kb) {
    if (clause.jurisdiction != jurisdiction) continue;
    const bool overlaps = std::any_of(criteria.begin(), criteria.end(), [&](const auto& id) {
      return std::find(clause.wcag_criteria.begin(), clause.wcag_criteria.end(), id) !=
             clause.wcag_criteria.end();
    });
    if (overlaps) out.push_back(clause);
  }
  if (out.empty()) {
    throw Error(ErrorCode::NoApplicableClause,
                fmt::format("no clause for jurisdiction {} and criteria {}", jurisdiction,
                            fmt::join(criteria, ", ")));
  }
  return out;
}

std::string resolve_jurisdiction(const std::optional<std::string>& run_flag,
                                 std::string_view persona_loc) {
  if (run_flag && !run_flag->empty()) return *run_flag;
  return std::string(persona_loc);
}

}  // namespace hear
