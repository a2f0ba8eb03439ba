#pragma once

// Accessibility-scanner ingestion: typed violations with pixel geometry and
// category-specific metrics.

#include "hear/geometry.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hear {

struct TouchTargetSize {
  friend bool operator==(const TouchTargetSize&, const TouchTargetSize&) = default;
};
struct ContentLabeling {
  friend bool operator==(const ContentLabeling&, const ContentLabeling&) = default;
};
struct ContrastRatio {
  friend bool operator==(const ContrastRatio&, const ContrastRatio&) = default;
};
/// Any scanner check outside the three persona-matchable categories.
struct OtherCategory {
  std::string tag;
  friend bool operator==(const OtherCategory&, const OtherCategory&) = default;
};

using ViolationCategory =
    std::variant<TouchTargetSize, ContentLabeling, ContrastRatio, OtherCategory>;

bool is_matchable(const ViolationCategory& category) noexcept;

/// "TouchTargetSize", "ContentLabeling", "ContrastRatio" or "Other:<tag>".
std::string category_name(const ViolationCategory& category);

/// Inverse of category_name.
ViolationCategory category_from_name(std::string_view name);

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Parses "#RRGGBB" (case-insensitive). Throws SchemaError.
Rgb parse_hex_color(std::string_view text);
std::string format_hex_color(const Rgb& color);

struct ViolationMetrics {
  std::optional<double> measured_dp;
  std::optional<double> required_dp;
  std::optional<double> contrast_ratio;
  std::optional<double> required_contrast;
  std::optional<Rgb> foreground_color;
  std::optional<Rgb> background_color;
  std::optional<bool> missing_label;
};

struct RawViolation {
  std::string id;
  ViolationCategory category;
  Rect bounds;
  std::string description;
  ViolationMetrics metrics;
  std::string screen_id;
};

struct DisplayProfile {
  double density = 2.625;
  int screen_width_px = 1080;
  int screen_height_px = 2400;
};

inline constexpr double kDefaultDensity = 2.625;
inline constexpr double kDefaultRequiredTouchDp = 48.0;
inline constexpr double kDefaultRequiredContrast = 4.5;

struct IngestOptions {
  double required_touch_dp = kDefaultRequiredTouchDp;
  /// When set, replaces whatever density the document declares.
  std::optional<double> density_override;
};

/// Total keyword classifier: type tag first, then description.
ViolationCategory classify_violation(std::string_view type_tag, std::string_view description);

double px_to_dp(double px, const DisplayProfile& profile);
double dp_to_px(double dp, const DisplayProfile& profile);

/// WCAG relative luminance of an sRGB colour, in [0, 1].
double relative_luminance(const Rgb& color);

/// WCAG contrast ratio, in [1, 21], symmetric in its arguments.
double contrast_ratio(const Rgb& fg, const Rgb& bg);

/// Lowercase hex digest of (screen_id, category, bounds).
std::string violation_id(std::string_view screen_id, const ViolationCategory& category,
                         const Rect& bounds);

struct ScannerDocument {
  std::string screen_id;
  DisplayProfile profile;
  std::vector<RawViolation> violations;
};

/// Normalized JSON input: {screen_id, display:{density,width_px,height_px},
/// violations:[{type,bounds,description,fg_color?,bg_color?}]}.
ScannerDocument parse_scanner_document(std::string_view json_text,
                                       const IngestOptions& options = {});

/// Line-oriented importer for the "Violation: / Key/Bounds: / Description:"
/// rendering. Records are separated by blank lines. The document carries no
/// display information, so the profile is supplied by the caller.
ScannerDocument parse_lenient_scanner(std::string_view text, const DisplayProfile& profile,
                                      std::string screen_id,
                                      const IngestOptions& options = {});

/// Builds a single violation from one record; shared by both importers.
RawViolation make_violation(std::size_t record_index, std::string_view type_tag,
                            std::string_view bounds_text, std::string description,
                            std::optional<Rgb> fg, std::optional<Rgb> bg,
                            const std::string& screen_id, const DisplayProfile& profile,
                            const IngestOptions& options);

}  // namespace hear
