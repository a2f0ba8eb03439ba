#include "hear/report.hpp"

#include "hear/error.hpp"

#include <chrono>
#include <cmath>
#include <ctime>

#include <fmt/format.h>

namespace hear {

using json = nlohmann::json;

namespace {

json metrics_to_json(const ViolationMetrics& m) {
  json j = json::object();
  if (m.measured_dp) j["measured_dp"] = *m.measured_dp;
  if (m.required_dp) j["required_dp"] = *m.required_dp;
  if (m.contrast_ratio) j["contrast_ratio"] = *m.contrast_ratio;
  if (m.required_contrast) j["required_contrast"] = *m.required_contrast;
  if (m.foreground_color) j["foreground_color"] = format_hex_color(*m.foreground_color);
  if (m.background_color) j["background_color"] = format_hex_color(*m.background_color);
  if (m.missing_label) j["missing_label"] = *m.missing_label;
  return j;
}

ViolationMetrics metrics_from_json(const json& j) {
  ViolationMetrics m;
  if (j.contains("measured_dp")) m.measured_dp = j["measured_dp"].get<double>();
  if (j.contains("required_dp")) m.required_dp = j["required_dp"].get<double>();
  if (j.contains("contrast_ratio")) m.contrast_ratio = j["contrast_ratio"].get<double>();
  if (j.contains("required_contrast")) m.required_contrast = j["required_contrast"].get<double>();
  if (j.contains("foreground_color")) m.foreground_color = parse_hex_color(j["foreground_color"].get<std::string>());
  if (j.contains("background_color")) m.background_color = parse_hex_color(j["background_color"].get<std::string>());
  if (j.contains("missing_label")) m.missing_label = j["missing_label"].get<bool>();
  return m;
}

json persona_to_json(const Persona& p) {
  json constraints = json::array();
  for (const auto& c : p.constraints) {
    json cj{{"text", c.text}};
    if (!c.params.empty()) cj["params"] = c.params;
    constraints.push_back(std::move(cj));
  }
  return json{{"name", p.name},           {"age", p.age},
              {"loc", p.loc},             {"condition", p.condition},
              {"constraints", constraints}, {"psychology", p.psychology},
              {"logic", p.logic},         {"wcag_criteria", p.wcag_criteria},
              {"provenance", p.provenance}};
}

Persona persona_from_json(const json& j) {
  Persona p;
  p.name = j.at("name");
  p.age = j.at("age");
  p.loc = j.at("loc");
  p.condition = j.at("condition");
  for (const auto& c : j.at("constraints")) {
    PersonaConstraint pc;
    pc.text = c.at("text");
    if (c.contains("params")) pc.params = c["params"].get<std::map<std::string, double>>();
    p.constraints.push_back(std::move(pc));
  }
  p.psychology = j.at("psychology");
  p.logic = j.at("logic");
  p.wcag_criteria = j.at("wcag_criteria").get<std::vector<std::string>>();
  p.provenance = j.value("provenance", std::string{});
  return p;
}

json clause_to_json(const LegalClause& c) {
  return json{{"jurisdiction", c.jurisdiction},         {"instrument", c.instrument},
              {"clause_id", c.clause_id},               {"wcag_criteria", c.wcag_criteria},
              {"requirement_text", c.requirement_text}, {"risk_text", c.risk_text},
              {"source_url", c.source_url}};
}

LegalClause clause_from_json(const json& j) {
  LegalClause c;
  c.jurisdiction = j.at("jurisdiction");
  c.instrument = j.at("instrument");
  c.clause_id = j.at("clause_id");
  c.wcag_criteria = j.at("wcag_criteria").get<std::vector<std::string>>();
  c.requirement_text = j.at("requirement_text");
  c.risk_text = j.at("risk_text");
  c.source_url = j.value("source_url", std::string{});
  return c;
}

std::string metric_summary(const ViolationMetrics& m) {
  std::string out;
  if (m.measured_dp && m.required_dp) {
    const double measured = *m.measured_dp;
    const std::string rounded = measured == std::round(measured)
                                    ? std::string{}
                                    : fmt::format(" (rounds to {} dp)", std::lround(measured));
    out += fmt::format("- Measured size: {} dp{}; required: {} dp\n", format_quantity(measured),
                       rounded, format_quantity(*m.required_dp));
  }
  if (m.contrast_ratio) {
    out += fmt::format("- Contrast ratio: {}:1; required: {}:1\n", format_quantity(*m.contrast_ratio),
                       format_quantity(m.required_contrast.value_or(kDefaultRequiredContrast)));
  }
  if (m.foreground_color && m.background_color) {
    out += fmt::format("- Colours: foreground {}, background {}\n",
                       format_hex_color(*m.foreground_color), format_hex_color(*m.background_color));
  }
  if (m.missing_label && *m.missing_label) out += "- Accessible label: missing\n";
  return out;
}

}  // namespace

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> uncited_instruments(const std::string& markdown,
                                             const std::vector<LegalClause>& clauses,
                                             const std::vector<std::string>& known) {
  std::vector<std::string> out;
  for (const auto& instrument : known) {
    if (markdown.find(instrument) == std::string::npos) continue;
    const bool retrieved = std::any_of(clauses.begin(), clauses.end(),
                                       [&](const auto& c) { return c.instrument == instrument; });
    if (!retrieved) out.push_back(instrument);
  }
  return out;
}

HearReport generate_report(const RawViolation& violation, const GroundedContext& ctx,
                           const Persona& persona, const std::vector<LegalClause>& clauses,
                           const ProviderConfig& cfg, ModelProvider& provider,
                           const GenerateOptions& options) {
  if (ctx.violation_id != violation.id) {
    throw Error(ErrorCode::PreconditionViolation, "context and violation differ");
  }
  if (clauses.empty()) throw Error(ErrorCode::EmptyClauseSet, "no legal clauses to ground on");

  HearReport report;
  report.violation = violation;
  report.persona = persona;
  report.jurisdiction =
      options.jurisdiction.empty() ? clauses.front().jurisdiction : options.jurisdiction;
  report.clauses = clauses;
  report.crop_rect = ctx.crop_rect;
  report.crop_file = violation.id + "_crop.png";
  for (const auto& c : clauses) {
    for (const auto& id : c.wcag_criteria) {
      auto it = options.criterion_titles.find(id);
      if (it != options.criterion_titles.end()) report.criterion_titles[id] = it->second;
    }
  }

  auto run_layer = [&](Prompt prompt) -> LayerOutput {
    const int layer = prompt.layer;
    LayerOutput out;
    out.layer = layer;
    try {
      out.text = invoke_model(prompt, provider, cfg, options.sleep);
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("layer {}: {}", layer, e.what()));
    }
    report.provenance.prompt_digests[static_cast<std::size_t>(layer - 1)] = prompt.digest();
    report.prompts.push_back(std::move(prompt));
    return out;
  };

  std::vector<std::string> violated;
  if (is_matchable(violation.category)) violated = map_category_to_criteria(violation.category);

  report.layers[0] = run_layer(build_layer1_prompt(persona, ctx, violation));
  report.layers[1] = run_layer(build_layer2_prompt(report.layers[0], ctx, violation));
  report.layers[2] = run_layer(
      build_layer3_prompt(report.layers[1], clauses, persona, options.criterion_titles, violated));
  for (const auto& c : clauses) {
    if (report.layers[2].text.find(c.instrument) != std::string::npos) {
      report.layers[2].cited_clause_ids.push_back(c.clause_id);
    }
  }

  report.provenance.model_name = provider.model_name();
  report.provenance.temperature = cfg.temperature;
  report.provenance.timestamp = options.clock ? options.clock() : utc_timestamp();
  report.assembled_markdown = render_markdown(report);

  const auto stray = uncited_instruments(report.assembled_markdown, clauses, options.known_instruments);
  if (!stray.empty()) {
    throw Error(ErrorCode::CitationOutsideKb,
                fmt::format("report names instruments that were not retrieved: {}",
                            fmt::join(stray, "; ")));
  }
  return report;
}

std::string render_markdown(const HearReport& r) {
  const auto& v = r.violation;
  const auto& p = r.persona;
  std::string md;
  md += fmt::format("# Accessibility report: {} on {}\n\n", category_name(v.category), v.screen_id);
  md += fmt::format("- Violation id: `{}`\n", v.id);
  md += fmt::format("- Screen: {}\n", v.screen_id);
  md += fmt::format("- Element bounds: {}\n", format_bounds(v.bounds));
  md += fmt::format("- Jurisdiction: {}\n\n", r.jurisdiction);

  md += fmt::format("## Persona: {} ({})\n\n", p.name, p.age);
  md += "| Field | Value |\n|---|---|\n";
  md += fmt::format("| Location | {} ({}) |\n", jurisdiction_name(p.loc), p.loc);
  md += fmt::format("| Condition | {} |\n", p.condition);
  std::vector<std::string> constraints;
  for (const auto& c : p.constraints) constraints.push_back(c.text);
  md += fmt::format("| Constraints | {} |\n", fmt::join(constraints, "; "));
  md += fmt::format("| Psychology | {} |\n", p.psychology);
  md += fmt::format("| Logic | {} |\n\n", p.logic);

  static constexpr std::array<std::string_view, 3> kTitles = {
      "Layer 1: Physical barrier", "Layer 2: Functional blockage",
      "Layer 3: Legal and compliance concerns"};
  for (std::size_t i = 0; i < r.layers.size(); ++i) {
    md += fmt::format("## {}\n\n{}\n\n", kTitles[i], r.layers[i].text);
  }

  md += "## Evidence\n\n";
  if (!v.description.empty()) md += fmt::format("- Scanner finding: {}\n", v.description);
  md += fmt::format("- Bounds: {}\n", format_bounds(v.bounds));
  md += metric_summary(v.metrics);
  md += fmt::format("- Screenshot crop region: {}\n\n", format_bounds(r.crop_rect));
  md += fmt::format("![Screenshot crop around the element]({})\n\n", r.crop_file);

  md += "### Grounding sources\n\n";
  for (const auto& c : r.clauses) {
    md += fmt::format("- {}, {}{}\n", c.instrument, c.clause_id,
                      c.source_url.empty() ? "" : fmt::format(" <{}>", c.source_url));
  }
  md += "\n---\n\n";
  md += fmt::format(
      "_Generated by hear {} with model {} at temperature {} on {}. Prompt digests: {}, {}, {}._\n",
      r.provenance.pipeline_version, r.provenance.model_name, r.provenance.temperature,
      r.provenance.timestamp, r.provenance.prompt_digests[0].substr(0, 12),
      r.provenance.prompt_digests[1].substr(0, 12), r.provenance.prompt_digests[2].substr(0, 12));
  return md;
}

json report_to_json(const HearReport& r) {
  const auto& v = r.violation;
  json layers = json::array();
  for (const auto& l : r.layers) {
    json lj{{"layer", l.layer}, {"text", l.text}};
    if (l.layer == 3) lj["cited_clause_ids"] = l.cited_clause_ids;
    layers.push_back(std::move(lj));
  }
  json clauses = json::array();
  for (const auto& c : r.clauses) clauses.push_back(clause_to_json(c));

  return json{
      {"violation",
       {{"id", v.id},
        {"category", category_name(v.category)},
        {"bounds", format_bounds(v.bounds)},
        {"description", v.description},
        {"metrics", metrics_to_json(v.metrics)},
        {"screen_id", v.screen_id}}},
      {"persona", persona_to_json(r.persona)},
      {"jurisdiction", r.jurisdiction},
      {"layers", layers},
      {"clauses", clauses},
      {"criterion_titles", r.criterion_titles},
      {"crop_rect", format_bounds(r.crop_rect)},
      {"crop_file", r.crop_file},
      {"assembled_markdown", r.assembled_markdown},
      {"provenance",
       {{"model_name", r.provenance.model_name},
        {"temperature", r.provenance.temperature},
        {"prompt_digests", r.provenance.prompt_digests},
        {"timestamp", r.provenance.timestamp},
        {"pipeline_version", r.provenance.pipeline_version}}},
  };
}

HearReport report_from_json(const json& j) {
  try {
    HearReport r;
    const auto& v = j.at("violation");
    r.violation.id = v.at("id");
    r.violation.category = category_from_name(v.at("category").get<std::string>());
    r.violation.bounds = parse_bounds(v.at("bounds").get<std::string>());
    r.violation.description = v.value("description", std::string{});
    r.violation.metrics = metrics_from_json(v.value("metrics", json::object()));
    r.violation.screen_id = v.at("screen_id");
    r.persona = persona_from_json(j.at("persona"));
    r.jurisdiction = j.value("jurisdiction", std::string{});

    const auto& layers = j.at("layers");
    if (!layers.is_array() || layers.size() != 3) {
      throw Error(ErrorCode::SchemaError, "report must carry exactly three layers");
    }
    for (std::size_t i = 0; i < 3; ++i) {
      r.layers[i].layer = layers[i].at("layer");
      r.layers[i].text = layers[i].at("text");
      if (layers[i].contains("cited_clause_ids")) {
        r.layers[i].cited_clause_ids = layers[i]["cited_clause_ids"].get<std::vector<std::string>>();
      }
      if (r.layers[i].layer != static_cast<int>(i) + 1) {
        throw Error(ErrorCode::SchemaError, "layers must be ordered 1, 2, 3");
      }
    }
    for (const auto& c : j.at("clauses")) r.clauses.push_back(clause_from_json(c));
    r.criterion_titles = j.value("criterion_titles", std::map<std::string, std::string>{});
    if (j.contains("crop_rect")) r.crop_rect = parse_bounds(j["crop_rect"].get<std::string>());
    r.crop_file = j.value("crop_file", std::string{});
    r.assembled_markdown = j.value("assembled_markdown", std::string{});
    const auto& prov = j.at("provenance");
    r.provenance.model_name = prov.value("model_name", std::string{});
    r.provenance.temperature = prov.value("temperature", 0.1);
    r.provenance.prompt_digests = prov.value("prompt_digests", std::array<std::string, 3>{});
    r.provenance.timestamp = prov.value("timestamp", std::string{});
    r.provenance.pipeline_version = prov.value("pipeline_version", std::string{});
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, fmt::format("report: {}", e.what()));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    throw Error(ErrorCode::SchemaError, fmt::format("report: {}", e.what()));
  }
}

json prompts_to_json(const std::vector<Prompt>& prompts) {
  json out = json::array();
  for (const auto& p : prompts) {
    out.push_back(json{{"layer", p.layer},
                       {"digest", p.digest()},
                       {"system", p.system_text},
                       {"user", p.user_text},
                       {"has_image", p.image_png.has_value()},
                       {"fields", p.fields}});
  }
  return out;
}

}  // namespace hear
