#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace hear {

/// Pixel rectangle in screen space, origin top-left. Half-open on the right
/// and bottom edges, matching the `[l,t][r,b]` notation used by Android dumps.
struct Rect {
  int left = 0;
  int top = 0;
  int right = 0;
  int bottom = 0;

  int width() const noexcept { return right - left; }
  int height() const noexcept { return bottom - top; }
  std::int64_t area() const noexcept {
    return static_cast<std::int64_t>(width()) * height();
  }
  bool contains(const Rect& other) const noexcept {
    return left <= other.left && top <= other.top && right >= other.right &&
           bottom >= other.bottom;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Parses `[l,t][r,b]`, tolerating whitespace around delimiters.
/// Throws MalformedBounds, DegenerateBounds or NegativeCoordinate.
Rect parse_bounds(std::string_view text);

/// Parses the grammar only; no degenerate/negative checks. Used where a
/// caller needs to decide for itself what to do with such rects.
Rect parse_bounds_unchecked(std::string_view text);

std::string format_bounds(const Rect& rect);

}  // namespace hear
