#include "hear/audit.hpp"

#include "hear/error.hpp"
#include "hear/roles.hpp"

#include <algorithm>
#include <cctype>
#include <regex>

#include <fmt/format.h>

namespace hear {

using json = nlohmann::json;

namespace {

constexpr std::string_view kLeftDouble = "\xE2\x80\x9C";   // “
constexpr std::string_view kRightDouble = "\xE2\x80\x9D";  // ”
constexpr std::string_view kLeftSingle = "\xE2\x80\x98";   // ‘
constexpr std::string_view kRightSingle = "\xE2\x80\x99";  // ’

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

bool at(std::string_view text, std::size_t pos, std::string_view token) {
  return text.substr(pos, token.size()) == token;
}

// Closing apostrophe-style quote: not followed by a word character and not
// preceded by whitespace.
bool closes_single(std::string_view text, std::size_t pos, std::size_t len) {
  if (pos == 0 || std::isspace(static_cast<unsigned char>(text[pos - 1]))) return false;
  const std::size_t after = pos + len;
  return after >= text.size() || !std::isalnum(static_cast<unsigned char>(text[after]));
}

// Opening apostrophe-style quote: not preceded by a word character and
// followed by something other than whitespace.
bool opens_single(std::string_view text, std::size_t pos, std::size_t len) {
  if (pos > 0 && is_word_byte(static_cast<unsigned char>(text[pos - 1]))) return false;
  const std::size_t after = pos + len;
  return after < text.size() && !std::isspace(static_cast<unsigned char>(text[after]));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void erase_all(std::string& text, const std::string& needle) {
  if (needle.empty()) return;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos)) {
    text.erase(pos, needle.size());
  }
}

}  // namespace

std::string_view to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Pending: return "pending";
  }
  return "pending";
}

Outcome outcome_from_string(std::string_view text) {
  if (text == "pass") return Outcome::Pass;
  if (text == "fail") return Outcome::Fail;
  if (text == "pending") return Outcome::Pending;
  throw Error(ErrorCode::SchemaError, fmt::format("unknown outcome \"{}\"", text));
}

void AuditVerdict::recompute() {
  hallucination = visual_grounding.outcome == Outcome::Fail ||
                  textual_fidelity.outcome == Outcome::Fail ||
                  functional_logic == Outcome::Fail;
}

std::vector<std::string> extract_quotes(std::string_view text) {
  std::vector<std::string> quotes;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t close = std::string_view::npos;
    std::size_t open_len = 0;
    std::size_t close_len = 0;

    if (text[i] == '"') {
      open_len = close_len = 1;
      close = text.find('"', i + 1);
    } else if (at(text, i, kLeftDouble)) {
      open_len = close_len = kLeftDouble.size();
      int depth = 1;
      for (std::size_t j = i + open_len; j < text.size(); ++j) {
        if (at(text, j, kLeftDouble)) ++depth;
        if (at(text, j, kRightDouble) && --depth == 0) {
          close = j;
          break;
        }
      }
    } else if (text[i] == '\'' && opens_single(text, i, 1)) {
      open_len = close_len = 1;
      for (std::size_t j = i + 1; j < text.size(); ++j) {
        if (text[j] == '\'' && closes_single(text, j, 1)) {
          close = j;
          break;
        }
      }
    } else if (at(text, i, kLeftSingle)) {
      open_len = close_len = kLeftSingle.size();
      for (std::size_t j = i + open_len; j < text.size(); ++j) {
        if (at(text, j, kRightSingle) && closes_single(text, j, kRightSingle.size())) {
          close = j;
          break;
        }
      }
    }

    if (close != std::string_view::npos) {
      quotes.emplace_back(text.substr(i + open_len, close - i - open_len));
      i = close + close_len;
    } else {
      i += std::max<std::size_t>(open_len, 1);
    }
  }
  return quotes;
}

std::vector<std::string> attributed_roles(std::string_view text) {
  static const std::regex re(
      R"re(\b(?:a|an|the|this|that)\s+(?:(?:"[^"]*"|'[^']*')\s+)?(button|icon|image|text field|checkbox|link|label)s?\b)re",
      std::regex::icase);
  std::vector<std::string> roles;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator(); ++it) {
    std::string role = (*it)[1].str();
    std::transform(role.begin(), role.end(), role.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (std::find(roles.begin(), roles.end(), role) == roles.end()) roles.push_back(role);
  }
  return roles;
}

GroundingResult check_visual_grounding(const HearReport& report, const ViewNode& root) {
  const Rect& bounds = report.violation.bounds;
  const ViewNode* node = nullptr;
  try {
    node = &locate_target(root, bounds);
  } catch (const Error&) {
    return {Outcome::Fail, fmt::format("no node at bounds {}", format_bounds(bounds))};
  }

  const std::string located =
      fmt::format("{}{} at {} ({}, clickable={})", node->class_name,
                  node->resource_id ? " [" + *node->resource_id + "]" : std::string{},
                  format_bounds(node->bounds),
                  node->bounds == bounds ? "exact match" : "smallest container", node->clickable);

  // Persona prose is rendered into the narrative but says nothing about the UI.
  std::string narrative = report.layers[0].text;
  for (const auto& s : fidelity_whitelist(report)) erase_all(narrative, s);

  const auto allowed = allowed_roles(*node);
  for (const auto& role : attributed_roles(narrative)) {
    if (std::find(allowed.begin(), allowed.end(), role) == allowed.end()) {
      return {Outcome::Fail,
              fmt::format("report calls the element a {} but the located node is {}; allowed "
                          "roles: {}",
                          role, located, allowed.empty() ? "none" : fmt::format("{}", fmt::join(allowed, ", ")))};
    }
  }
  return {Outcome::Pass, "located " + located};
}

std::vector<std::string> fidelity_whitelist(const HearReport& report) {
  std::vector<std::string> out;
  for (const auto& c : report.clauses) out.push_back(c.instrument);
  const auto& p = report.persona;
  out.push_back(p.name);
  out.push_back(p.loc);
  out.push_back(jurisdiction_name(p.loc));
  out.push_back(p.condition);
  for (const auto& c : p.constraints) out.push_back(c.text);
  out.push_back(p.psychology);
  out.push_back(p.logic);
  for (const auto& [id, title] : report.criterion_titles) {
    out.push_back(title);
    out.push_back(id + " " + title);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& s) { return s.empty(); }), out.end());
  return out;
}

FidelityResult check_textual_fidelity(const HearReport& report, const SemanticSlice& slice) {
  const auto whitelist = fidelity_whitelist(report);
  FidelityResult result{Outcome::Pass, {}};
  for (const auto& layer : report.layers) {
    for (const auto& quote : extract_quotes(layer.text)) {
      const std::string_view q = trim(quote);
      if (q.empty()) continue;
      const bool in_slice = slice.serialized.find(q) != std::string::npos;
      const bool whitelisted = std::find(whitelist.begin(), whitelist.end(), q) != whitelist.end();
      if (!in_slice && !whitelisted) result.offending_quotes.emplace_back(q);
    }
  }
  if (!result.offending_quotes.empty()) result.outcome = Outcome::Fail;
  return result;
}

AuditVerdict record_functional_logic(AuditVerdict verdict, Outcome decision,
                                     const std::string& annotator) {
  if (verdict.functional_logic != Outcome::Pending) {
    throw Error(ErrorCode::AlreadyAnnotated,
                fmt::format("{} already annotated by {}", verdict.violation_id,
                            verdict.annotator.empty() ? "unknown" : verdict.annotator));
  }
  if (decision == Outcome::Pending) {
    throw Error(ErrorCode::PreconditionViolation, "annotation must be pass or fail");
  }
  verdict.functional_logic = decision;
  verdict.annotator = annotator;
  verdict.recompute();
  return verdict;
}

AuditSummary summarize(const std::vector<AuditVerdict>& verdicts) {
  AuditSummary s;
  s.reports = verdicts.size();
  for (const auto& v : verdicts) {
    if (v.visual_grounding.outcome == Outcome::Fail) ++s.visual_grounding_failures;
    if (v.textual_fidelity.outcome == Outcome::Fail) ++s.textual_fidelity_failures;
    switch (v.functional_logic) {
      case Outcome::Pending: ++s.functional_pending; break;
      case Outcome::Pass: ++s.functional_pass; break;
      case Outcome::Fail: ++s.functional_fail; break;
    }
    if (v.hallucination) ++s.hallucinations;
  }
  return s;
}

AuditBatch audit_batch(const std::vector<HearReport>& reports,
                       const std::map<std::string, ViewNode>& hierarchies) {
  AuditBatch batch;
  for (const auto& report : reports) {
    AuditVerdict verdict;
    verdict.violation_id = report.violation.id;
    verdict.screen_id = report.violation.screen_id;

    auto it = hierarchies.find(report.violation.screen_id);
    if (it == hierarchies.end()) it = hierarchies.find("*");

    SemanticSlice slice;
    if (it == hierarchies.end()) {
      verdict.visual_grounding = {
          Outcome::Fail, fmt::format("{}: no hierarchy for screen {}",
                                     to_string(ErrorCode::MissingHierarchy),
                                     report.violation.screen_id)};
    } else {
      verdict.visual_grounding = check_visual_grounding(report, it->second);
      try {
        slice = build_slice(it->second, locate_target(it->second, report.violation.bounds));
      } catch (const Error&) {
        // No target: only whitelisted quotes can pass.
      }
    }
    verdict.textual_fidelity = check_textual_fidelity(report, slice);
    verdict.recompute();
    batch.verdicts.push_back(std::move(verdict));
  }
  batch.summary = summarize(batch.verdicts);
  return batch;
}

json verdict_to_json(const AuditVerdict& v) {
  return json{
      {"violation_id", v.violation_id},
      {"screen_id", v.screen_id},
      {"visual_grounding",
       {{"result", to_string(v.visual_grounding.outcome)}, {"evidence", v.visual_grounding.evidence}}},
      {"textual_fidelity",
       {{"result", to_string(v.textual_fidelity.outcome)},
        {"offending_quotes", v.textual_fidelity.offending_quotes}}},
      {"functional_logic",
       {{"result", to_string(v.functional_logic)},
        {"annotator", v.annotator.empty() ? json(nullptr) : json(v.annotator)}}},
      {"hallucination", v.hallucination},
      {"manual_checks",
       "Judge whether the inferred consequence follows from the screen's purpose, and compare "
       "quoted strings against the screenshot; the automated check covers the view hierarchy "
       "only."},
  };
}

AuditVerdict verdict_from_json(const json& j) {
  try {
    AuditVerdict v;
    v.violation_id = j.at("violation_id");
    v.screen_id = j.value("screen_id", std::string{});
    v.visual_grounding.outcome = outcome_from_string(j.at("visual_grounding").at("result").get<std::string>());
    v.visual_grounding.evidence = j.at("visual_grounding").value("evidence", std::string{});
    v.textual_fidelity.outcome = outcome_from_string(j.at("textual_fidelity").at("result").get<std::string>());
    v.textual_fidelity.offending_quotes =
        j.at("textual_fidelity").value("offending_quotes", std::vector<std::string>{});
    const auto& fl = j.at("functional_logic");
    v.functional_logic = outcome_from_string(fl.at("result").get<std::string>());
    if (fl.contains("annotator") && fl["annotator"].is_string()) v.annotator = fl["annotator"];
    v.recompute();
    return v;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, fmt::format("worksheet record: {}", e.what()));
  }
}

json summary_to_json(const AuditSummary& s) {
  return json{{"reports", s.reports},
              {"visual_grounding_failures", s.visual_grounding_failures},
              {"textual_fidelity_failures", s.textual_fidelity_failures},
              {"functional_logic",
               {{"pending", s.functional_pending}, {"pass", s.functional_pass}, {"fail", s.functional_fail}}},
              {"hallucinations", s.hallucinations}};
}

}  // namespace hear
