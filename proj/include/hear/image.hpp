#pragma once

#include "hear/geometry.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace hear {

/// 8-bit RGBA raster, row-major, no padding.
class Image {
 public:
  static constexpr int kChannels = 4;

  Image() = default;
  Image(int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return pixels_.empty(); }

  std::span<std::uint8_t> pixel(int x, int y);
  std::span<const std::uint8_t> pixel(int x, int y) const;
  std::span<const std::uint8_t> data() const noexcept { return pixels_; }

  void fill(const Rect& area, std::uint8_t r, std::uint8_t g, std::uint8_t b);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Throws ImageDecodeError.
Image decode_png(std::span<const std::uint8_t> bytes);
Image read_png(const std::filesystem::path& path);

/// Deterministic encoding: identical pixels give identical bytes.
std::vector<std::uint8_t> encode_png(const Image& image);
void write_png(const std::filesystem::path& path, const Image& image);

/// Exact pixel sub-rectangle. Throws CropOutOfBounds.
Image crop_screenshot(const Image& image, const Rect& crop);

}  // namespace hear
