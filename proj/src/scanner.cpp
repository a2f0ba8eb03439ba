#include "hear/scanner.hpp"

#include "hear/digest.hpp"
#include "hear/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <regex>

#include <fmt/format.h>

namespace hear {

using json = nlohmann::json;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<ViolationCategory> match_keywords(std::string_view text) {
  const std::string t = lower(text);
  if (t.find("touch target") != std::string::npos) return TouchTargetSize{};
  for (const char* kw : {"item label", "content label", "missing label"}) {
    if (t.find(kw) != std::string::npos) return ContentLabeling{};
  }
  if (t.find("contrast") != std::string::npos) return ContrastRatio{};
  return std::nullopt;
}

std::optional<double> first_number(const std::string& text, const std::regex& re) {
  std::smatch m;
  if (std::regex_search(text, m, re)) return std::stod(m[1].str());
  return std::nullopt;
}

// Smallest "<dimension> is Ndp" value; scanners report the failing dimension.
std::optional<double> measured_dp_from_text(const std::string& text) {
  static const std::regex re(R"((?:height|width|size) is (\d+(?:\.\d+)?)\s*dp)",
                             std::regex::icase);
  std::optional<double> best;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), re);
       it != std::sregex_iterator(); ++it) {
    const double v = std::stod((*it)[1].str());
    best = best ? std::min(*best, v) : v;
  }
  return best;
}

std::optional<Rgb> color_from_text(const std::string& text, const char* which) {
  const std::regex re(std::string(which) + R"( colou?r of (#[0-9a-fA-F]{6}))",
                      std::regex::icase);
  std::smatch m;
  if (std::regex_search(text, m, re)) return parse_hex_color(m[1].str());
  return std::nullopt;
}

void check_inside_screen(const Rect& r, const DisplayProfile& p, std::size_t index) {
  if (r.right > p.screen_width_px || r.bottom > p.screen_height_px) {
    throw Error(ErrorCode::BoundsOutsideScreen,
                fmt::format("{} exceeds {}x{} screen", format_bounds(r), p.screen_width_px,
                            p.screen_height_px),
                index);
  }
}

void validate_profile(const DisplayProfile& p) {
  if (!(p.density > 0.0) || !std::isfinite(p.density)) {
    throw Error(ErrorCode::SchemaError, "display density must be > 0");
  }
  if (p.screen_width_px <= 0 || p.screen_height_px <= 0) {
    throw Error(ErrorCode::SchemaError, "screen dimensions must be > 0");
  }
}

// Disambiguates records that share (screen, category, bounds).
void assign_unique_ids(std::vector<RawViolation>& violations) {
  std::map<std::string, int> seen;
  for (auto& v : violations) {
    const int n = ++seen[v.id];
    if (n > 1) v.id += fmt::format("-{}", n);
  }
}

}  // namespace

bool is_matchable(const ViolationCategory& category) noexcept {
  return !std::holds_alternative<OtherCategory>(category);
}

std::string category_name(const ViolationCategory& category) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, TouchTargetSize>) return "TouchTargetSize";
        else if constexpr (std::is_same_v<T, ContentLabeling>) return "ContentLabeling";
        else if constexpr (std::is_same_v<T, ContrastRatio>) return "ContrastRatio";
        else return "Other:" + c.tag;
      },
      category);
}

ViolationCategory category_from_name(std::string_view name) {
  if (name == "TouchTargetSize") return TouchTargetSize{};
  if (name == "ContentLabeling") return ContentLabeling{};
  if (name == "ContrastRatio") return ContrastRatio{};
  if (name.starts_with("Other:")) return OtherCategory{std::string(name.substr(6))};
  return OtherCategory{std::string(name)};
}

Rgb parse_hex_color(std::string_view text) {
  text = trim(text);
  if (text.size() != 7 || text[0] != '#' ||
      !std::all_of(text.begin() + 1, text.end(),
                   [](unsigned char c) { return std::isxdigit(c); })) {
    throw Error(ErrorCode::SchemaError, fmt::format("bad colour \"{}\"", text));
  }
  auto channel = [&](std::size_t at) {
    return static_cast<std::uint8_t>(std::stoi(std::string(text.substr(at, 2)), nullptr, 16));
  };
  return Rgb{channel(1), channel(3), channel(5)};
}

std::string format_hex_color(const Rgb& c) {
  return fmt::format("#{:02X}{:02X}{:02X}", c.r, c.g, c.b);
}

ViolationCategory classify_violation(std::string_view type_tag, std::string_view description) {
  if (auto c = match_keywords(type_tag)) return *c;
  if (auto c = match_keywords(description)) return *c;
  return OtherCategory{std::string(trim(type_tag))};
}

double px_to_dp(double px, const DisplayProfile& profile) { return px / profile.density; }

double dp_to_px(double dp, const DisplayProfile& profile) { return dp * profile.density; }

double relative_luminance(const Rgb& color) {
  auto linear = [](std::uint8_t channel) {
    const double c = channel / 255.0;
    return c <= 0.03928 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
  };
  return 0.2126 * linear(color.r) + 0.7152 * linear(color.g) + 0.0722 * linear(color.b);
}

double contrast_ratio(const Rgb& fg, const Rgb& bg) {
  const double a = relative_luminance(fg);
  const double b = relative_luminance(bg);
  return (std::max(a, b) + 0.05) / (std::min(a, b) + 0.05);
}

std::string violation_id(std::string_view screen_id, const ViolationCategory& category,
                         const Rect& bounds) {
  const std::string key =
      fmt::format("{}\x1f{}\x1f{}", screen_id, category_name(category), format_bounds(bounds));
  return sha256_hex(key).substr(0, 16);
}

RawViolation make_violation(std::size_t record_index, std::string_view type_tag,
                            std::string_view bounds_text, std::string description,
                            std::optional<Rgb> fg, std::optional<Rgb> bg,
                            const std::string& screen_id, const DisplayProfile& profile,
                            const IngestOptions& options) {
  RawViolation v;
  v.screen_id = screen_id;
  v.category = classify_violation(type_tag, description);
  try {
    v.bounds = parse_bounds(trim(bounds_text));
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("bounds \"{}\"", bounds_text), record_index);
  }
  check_inside_screen(v.bounds, profile, record_index);
  v.description = std::move(description);

  auto& m = v.metrics;
  if (std::holds_alternative<TouchTargetSize>(v.category)) {
    static const std::regex required_re(R"((\d+(?:\.\d+)?)\s*dp or larger)", std::regex::icase);
    m.measured_dp = measured_dp_from_text(v.description);
    if (!m.measured_dp) {
      m.measured_dp = px_to_dp(std::min(v.bounds.width(), v.bounds.height()), profile);
    }
    m.required_dp = first_number(v.description, required_re).value_or(options.required_touch_dp);
  } else if (std::holds_alternative<ContrastRatio>(v.category)) {
    static const std::regex ratio_re(R"(contrast ratio is (\d+(?:\.\d+)?))", std::regex::icase);
    static const std::regex required_re(R"(ratio to (\d+(?:\.\d+)?) or greater)",
                                        std::regex::icase);
    m.foreground_color = fg ? fg : color_from_text(v.description, "foreground");
    m.background_color = bg ? bg : color_from_text(v.description, "background");
    if (m.foreground_color && m.background_color) {
      m.contrast_ratio = contrast_ratio(*m.foreground_color, *m.background_color);
    } else {
      m.contrast_ratio = first_number(v.description, ratio_re);
    }
    if (!m.contrast_ratio || *m.contrast_ratio < 1.0) {
      throw Error(ErrorCode::SchemaError,
                  "contrast record needs fg/bg colours or a stated ratio >= 1", record_index);
    }
    m.required_contrast =
        first_number(v.description, required_re).value_or(kDefaultRequiredContrast);
  } else if (std::holds_alternative<ContentLabeling>(v.category)) {
    m.missing_label = true;
  }
  v.id = violation_id(screen_id, v.category, v.bounds);
  return v;
}

ScannerDocument parse_scanner_document(std::string_view json_text, const IngestOptions& options) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::SchemaError, "top level must be an object");

  ScannerDocument out;
  try {
    out.screen_id = doc.at("screen_id").get<std::string>();
    const auto& display = doc.at("display");
    out.profile.density = display.at("density").get<double>();
    out.profile.screen_width_px = display.at("width_px").get<int>();
    out.profile.screen_height_px = display.at("height_px").get<int>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SchemaError, e.what());
  }
  if (out.screen_id.empty()) throw Error(ErrorCode::SchemaError, "screen_id is empty");
  if (options.density_override) out.profile.density = *options.density_override;
  validate_profile(out.profile);

  const auto records = doc.value("violations", json::array());
  if (!records.is_array()) throw Error(ErrorCode::SchemaError, "violations must be an array");

  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    std::string type, bounds, description;
    std::optional<Rgb> fg, bg;
    try {
      type = rec.at("type").get<std::string>();
      bounds = rec.at("bounds").get<std::string>();
      description = rec.value("description", std::string{});
      if (rec.contains("fg_color")) fg = parse_hex_color(rec["fg_color"].get<std::string>());
      if (rec.contains("bg_color")) bg = parse_hex_color(rec["bg_color"].get<std::string>());
    } catch (const json::exception& e) {
      throw Error(ErrorCode::SchemaError, e.what(), i);
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), i);
    }
    out.violations.push_back(make_violation(i, type, bounds, std::move(description), fg, bg,
                                            out.screen_id, out.profile, options));
  }
  assign_unique_ids(out.violations);
  return out;
}

ScannerDocument parse_lenient_scanner(std::string_view text, const DisplayProfile& profile,
                                      std::string screen_id, const IngestOptions& options) {
  ScannerDocument out;
  out.screen_id = std::move(screen_id);
  out.profile = profile;
  if (options.density_override) out.profile.density = *options.density_override;
  validate_profile(out.profile);

  struct Record {
    std::optional<std::string> type, bounds, description;
    bool empty() const { return !type && !bounds && !description; }
  };
  std::vector<Record> records;
  Record current;
  std::string* last_field = nullptr;

  auto flush = [&] {
    if (!current.empty()) records.push_back(std::move(current));
    current = Record{};
    last_field = nullptr;
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;

    if (line.empty()) {
      flush();
      if (end == text.size()) break;
      continue;
    }
    auto field = [&](std::string_view key) -> std::optional<std::string> {
      if (line.size() >= key.size() && lower(line.substr(0, key.size())) == lower(key)) {
        return std::string(trim(line.substr(key.size())));
      }
      return std::nullopt;
    };
    if (auto v = field("Violation:")) {
      if (current.type) flush();
      current.type = std::move(v);
      last_field = &*current.type;
    } else if (auto b = field("Key/Bounds:")) {
      current.bounds = std::move(b);
      last_field = &*current.bounds;
    } else if (auto b2 = field("Bounds:")) {
      current.bounds = std::move(b2);
      last_field = &*current.bounds;
    } else if (auto d = field("Description:")) {
      current.description = std::move(d);
      last_field = &*current.description;
    } else if (last_field != nullptr) {
      // Continuation of a wrapped line.
      *last_field += ' ';
      *last_field += line;
    } else {
      throw Error(ErrorCode::SchemaError,
                  fmt::format("unrecognized line \"{}\"", line), records.size());
    }
    if (end == text.size()) break;
  }
  flush();

  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& rec = records[i];
    if (!rec.type || !rec.bounds) {
      throw Error(ErrorCode::SchemaError, "record needs Violation and Key/Bounds lines", i);
    }
    RawViolation v = make_violation(i, *rec.type, *rec.bounds, rec.description.value_or(""),
                                    std::nullopt, std::nullopt, out.screen_id, out.profile,
                                    options);
    if (std::holds_alternative<TouchTargetSize>(v.category) &&
        !(*v.metrics.measured_dp < *v.metrics.required_dp)) {
      throw Error(ErrorCode::SchemaError,
                  fmt::format("touch target reports {}dp which already meets {}dp",
                              *v.metrics.measured_dp, *v.metrics.required_dp),
                  i);
    }
    out.violations.push_back(std::move(v));
  }
  assign_unique_ids(out.violations);
  return out;
}

}  // namespace hear
