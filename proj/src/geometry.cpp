#include "hear/geometry.hpp"

#include "hear/error.hpp"

#include <cctype>
#include <charconv>
#include <fmt/format.h>

namespace hear {

namespace {

class BoundsLexer {
 public:
  explicit BoundsLexer(std::string_view text) : text_(text) {}

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(fmt::format("expected '{}'", c));
    ++pos_;
  }

  int integer() {
    skip_ws();
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    int value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{}) fail("expected integer");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  void finish() {
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::MalformedBounds,
                fmt::format("{} at offset {} in \"{}\"", what, pos_, text_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Rect parse_bounds_unchecked(std::string_view text) {
  BoundsLexer lex(text);
  Rect r;
  lex.expect('[');
  r.left = lex.integer();
  lex.expect(',');
  r.top = lex.integer();
  lex.expect(']');
  lex.expect('[');
  r.right = lex.integer();
  lex.expect(',');
  r.bottom = lex.integer();
  lex.expect(']');
  lex.finish();
  return r;
}

Rect parse_bounds(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::MalformedBounds, "empty bounds string");
  const Rect r = parse_bounds_unchecked(text);
  if (r.left < 0 || r.top < 0 || r.right < 0 || r.bottom < 0) {
    throw Error(ErrorCode::NegativeCoordinate, std::string(text));
  }
  if (r.left >= r.right || r.top >= r.bottom) {
    throw Error(ErrorCode::DegenerateBounds, std::string(text));
  }
  return r;
}

std::string format_bounds(const Rect& rect) {
  return fmt::format("[{},{}][{},{}]", rect.left, rect.top, rect.right, rect.bottom);
}

}  // namespace hear
