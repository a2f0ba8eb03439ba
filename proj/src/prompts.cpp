#include "hear/prompts.hpp"

#include "hear/digest.hpp"
#include "hear/error.hpp"
#include "hear/roles.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace hear {

using json = nlohmann::json;

namespace {

constexpr std::string_view kLayer1System =
    "You are an accessibility analyst who simulates how a specific person with a disability "
    "experiences a mobile UI. Act as the defined persona. Using the persona profile, the UI "
    "context and the attached screenshot crop, describe in one paragraph the person's physical "
    "attempt to interact with the target element and where it breaks down. Refer to concrete "
    "measurements. Only put text in quotation marks if it appears verbatim in the UI context.";

constexpr std::string_view kLayer2System =
    "You are an accessibility analyst. Given the physical barrier analysis below and the "
    "structural context of the target element, explain in one paragraph how that barrier "
    "disrupts the user's intended workflow in this app. Trace the consequences step by step: "
    "the failed interaction, repeated attempts, and whether the user gives up on the task. Base "
    "the element's purpose on its resource id, neighboring labels and ancestors. Only put text "
    "in quotation marks if it appears verbatim in the provided context.";

constexpr std::string_view kLayer3System =
    "You are an accessibility compliance analyst. Compare the functional blockage below against "
    "the legal and standards clauses provided. For each clause, state the criterion that is "
    "violated, the requirement, and the legal or compliance risk, explicitly citing the "
    "instrument name and clause id. Do not cite any law, standard or regulation that is not in "
    "the provided list.";

std::string render_persona(const Persona& p) {
  std::string out;
  out += fmt::format("Name: {} ({})\n", p.name, p.age);
  out += fmt::format("Location: {} ({})\n", jurisdiction_name(p.loc), p.loc);
  out += fmt::format("Condition: {}\n", p.condition);
  out += "Constraints:\n";
  for (const auto& c : p.constraints) {
    out += fmt::format("  - {}\n", c.text);
    for (const auto& [key, value] : c.params) {
      out += fmt::format("    {}: {}\n", key, format_quantity(value));
    }
  }
  out += fmt::format("Psychology: {}\n", p.psychology);
  out += fmt::format("Logic: {}\n", p.logic);
  return out;
}

json persona_fields(const Persona& p) {
  json constraints = json::array();
  for (const auto& c : p.constraints) constraints.push_back(c.text);
  return json{{"name", p.name},
              {"age", p.age},
              {"loc", p.loc},
              {"location", jurisdiction_name(p.loc)},
              {"condition", p.condition},
              {"constraints", constraints},
              {"psychology", p.psychology},
              {"logic", p.logic}};
}

// Metric lines for the prompt plus the structured values the mock needs.
std::string render_metrics(const RawViolation& v, json& fields) {
  const auto& m = v.metrics;
  std::string out = fmt::format("Category: {}\nBounds: {}\n", category_name(v.category),
                                format_bounds(v.bounds));
  if (m.measured_dp && m.required_dp) {
    out += fmt::format("Measured size: {} dp (about {} dp)\nRequired size: {} dp\n",
                       format_quantity(*m.measured_dp), std::lround(*m.measured_dp),
                       format_quantity(*m.required_dp));
    fields["measured_dp"] = std::lround(*m.measured_dp);
    fields["required_dp"] = format_quantity(*m.required_dp);
  }
  if (m.contrast_ratio) {
    out += fmt::format("Contrast ratio: {}:1\n", format_quantity(*m.contrast_ratio));
    fields["contrast_ratio"] = format_quantity(*m.contrast_ratio);
    if (m.required_contrast) {
      out += fmt::format("Required contrast: {}:1\n", format_quantity(*m.required_contrast));
      fields["required_contrast"] = format_quantity(*m.required_contrast);
    }
    if (m.foreground_color && m.background_color) {
      out += fmt::format("Foreground: {}\nBackground: {}\n", format_hex_color(*m.foreground_color),
                         format_hex_color(*m.background_color));
      fields["foreground"] = format_hex_color(*m.foreground_color);
      fields["background"] = format_hex_color(*m.background_color);
    }
  }
  if (m.missing_label && *m.missing_label) out += "Accessible label: missing\n";
  if (!v.description.empty()) out += fmt::format("Scanner description: {}\n", v.description);
  return out;
}

std::optional<std::string> visible_label(const ViewNode& node) {
  if (node.text) return node.text;
  if (node.content_description) return node.content_description;
  return std::nullopt;
}

}  // namespace

std::string Prompt::digest() const {
  std::string material = fmt::format("layer={}\x1e{}\x1e{}\x1e", layer, system_text, user_text);
  if (image_png) {
    material.append(reinterpret_cast<const char*>(image_png->data()), image_png->size());
  }
  return sha256_hex(material);
}

std::string jurisdiction_name(std::string_view code) {
  if (code == "JP") return "Japan";
  if (code == "US") return "the United States";
  if (code == "EU") return "the European Union";
  if (code == "GB") return "the United Kingdom";
  if (code == "DE") return "Germany";
  if (code == "FR") return "France";
  return std::string(code);
}

std::string format_quantity(double value) {
  if (std::fabs(value - std::round(value)) < 1e-9) return fmt::format("{}", std::llround(value));
  return fmt::format("{:.2f}", value);
}

Prompt build_layer1_prompt(const Persona& persona, const GroundedContext& ctx,
                           const RawViolation& violation) {
  if (ctx.slice.serialized.empty()) {
    throw Error(ErrorCode::PreconditionViolation, "semantic slice rendering is empty");
  }
  if (!ctx.violation_id.empty() && ctx.violation_id != violation.id) {
    throw Error(ErrorCode::PreconditionViolation, "context belongs to a different violation");
  }

  Prompt p;
  p.layer = 1;
  p.system_text = std::string(kLayer1System);
  p.fields["persona"] = persona_fields(persona);
  p.fields["category"] = category_name(violation.category);
  p.fields["bounds"] = format_bounds(violation.bounds);
  p.fields["role"] = std::string(primary_role(ctx.slice.target));
  if (auto label = visible_label(ctx.slice.target)) p.fields["label"] = *label;

  std::string user;
  user += "## Persona profile\n" + render_persona(persona) + "\n";
  user += "## Violation\n" + render_metrics(violation, p.fields) + "\n";
  user += "## UI context (semantic slice)\n" + ctx.slice.serialized + "\n";
  user += ctx.crop_image ? "## Screenshot\nA crop of the screen around the element is attached.\n"
                         : "## Screenshot\nNo screenshot crop is available.\n";
  p.user_text = std::move(user);
  if (ctx.crop_image) p.image_png = encode_png(*ctx.crop_image);
  return p;
}

Prompt build_layer2_prompt(const LayerOutput& layer1, const GroundedContext& ctx,
                           const RawViolation& violation) {
  if (layer1.layer != 1) throw Error(ErrorCode::PreconditionViolation, "expected layer-1 output");

  const ViewNode& target = ctx.slice.target;
  Prompt p;
  p.layer = 2;
  p.system_text = std::string(kLayer2System);
  p.fields["category"] = category_name(violation.category);
  p.fields["role"] = std::string(primary_role(target));
  if (auto label = visible_label(target)) p.fields["label"] = *label;
  if (target.resource_id) p.fields["resource_id"] = *target.resource_id;
  p.fields["neighbor_texts"] = ctx.slice.neighbor_texts;
  p.fields["ancestor_ids"] = ctx.slice.ancestor_ids;

  std::string user;
  user += "## Physical barrier analysis (previous step)\n" + layer1.text + "\n\n";
  user += "## Target element\n" + render_node_line(target) + "\n";
  user += fmt::format("Resource id: {}\n", target.resource_id.value_or("(none)"));
  if (ctx.slice.neighbor_texts.empty()) {
    user += "Neighboring text labels: none; the element has no neighboring text labels.\n";
  } else {
    user += "Neighboring text labels:\n";
    for (const auto& t : ctx.slice.neighbor_texts) user += fmt::format("  - \"{}\"\n", t);
  }
  user += fmt::format("Ancestor resource ids: {}\n",
                      ctx.slice.ancestor_ids.empty()
                          ? std::string("(none)")
                          : fmt::format("{}", fmt::join(ctx.slice.ancestor_ids, " > ")));
  if (!ctx.slice.children.empty()) {
    user += "Children:\n";
    for (const auto& c : ctx.slice.children) user += "  " + render_node_line(c) + "\n";
  }
  p.user_text = std::move(user);
  return p;
}

Prompt build_layer3_prompt(const LayerOutput& layer2, const std::vector<LegalClause>& clauses,
                           const Persona& persona,
                           const std::map<std::string, std::string>& criterion_titles,
                           const std::vector<std::string>& violated_criteria) {
  if (clauses.empty()) throw Error(ErrorCode::EmptyClauseSet, "no legal clauses to ground on");
  if (layer2.layer != 2) throw Error(ErrorCode::PreconditionViolation, "expected layer-2 output");

  Prompt p;
  p.layer = 3;
  p.system_text = std::string(kLayer3System);
  p.fields["persona"] = persona_fields(persona);

  std::string user;
  user += "## Functional blockage (previous step)\n" + layer2.text + "\n\n";
  user += fmt::format("## Jurisdiction\n{}\n\n", jurisdiction_name(clauses.front().jurisdiction));
  user += "## Retrieved clauses (cite only these)\n";
  json clause_fields = json::array();
  for (const auto& c : clauses) {
    // The criterion this clause is cited for: first overlap with the violation.
    std::string criterion = c.wcag_criteria.front();
    for (const auto& id : violated_criteria) {
      if (std::find(c.wcag_criteria.begin(), c.wcag_criteria.end(), id) != c.wcag_criteria.end()) {
        criterion = id;
        break;
      }
    }
    const auto title_it = criterion_titles.find(criterion);
    const std::string title = title_it == criterion_titles.end() ? "" : title_it->second;

    user += fmt::format("- Instrument: {}\n  Clause: {}\n  Criterion: {}{}\n", c.instrument,
                        c.clause_id, criterion, title.empty() ? "" : " " + title);
    user += fmt::format("  Requirement: {}\n  Risk: {}\n", c.requirement_text, c.risk_text);
    clause_fields.push_back(json{{"instrument", c.instrument},
                                 {"clause_id", c.clause_id},
                                 {"criterion", criterion},
                                 {"criterion_title", title},
                                 {"requirement", c.requirement_text},
                                 {"risk", c.risk_text}});
  }
  p.fields["clauses"] = std::move(clause_fields);
  p.user_text = std::move(user);
  return p;
}

}  // namespace hear
