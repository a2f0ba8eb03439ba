#include "hear/image.hpp"

#include "hear/error.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

namespace hear {

Image::Image(int width, int height)
    : width_(width),
      height_(height),
      pixels_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * kChannels, 0) {}

std::span<std::uint8_t> Image::pixel(int x, int y) {
  const auto at = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + x) * kChannels;
  return {pixels_.data() + at, kChannels};
}

std::span<const std::uint8_t> Image::pixel(int x, int y) const {
  const auto at = (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + x) * kChannels;
  return {pixels_.data() + at, kChannels};
}

void Image::fill(const Rect& area, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  for (int y = std::max(0, area.top); y < std::min(height_, area.bottom); ++y) {
    for (int x = std::max(0, area.left); x < std::min(width_, area.right); ++x) {
      auto p = pixel(x, y);
      p[0] = r;
      p[1] = g;
      p[2] = b;
      p[3] = 255;
    }
  }
}

Image decode_png(std::span<const std::uint8_t> bytes) {
  png_image header{};
  header.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&header, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::ImageDecodeError, header.message);
  }
  header.format = PNG_FORMAT_RGBA;
  Image image(static_cast<int>(header.width), static_cast<int>(header.height));
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(header));
  if (!png_image_finish_read(&header, nullptr, buffer.data(), 0, nullptr)) {
    std::string message = header.message;
    png_image_free(&header);
    throw Error(ErrorCode::ImageDecodeError, message);
  }
  for (int y = 0; y < image.height(); ++y) {
    std::memcpy(image.pixel(0, y).data(),
                buffer.data() + static_cast<std::size_t>(y) * image.width() * Image::kChannels,
                static_cast<std::size_t>(image.width()) * Image::kChannels);
  }
  return image;
}

Image read_png(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ImageDecodeError, fmt::format("cannot open {}", path.string()));
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_png(bytes);
}

std::vector<std::uint8_t> encode_png(const Image& image) {
  png_image header{};
  header.version = PNG_IMAGE_VERSION;
  header.width = static_cast<png_uint_32>(image.width());
  header.height = static_cast<png_uint_32>(image.height());
  header.format = PNG_FORMAT_RGBA;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&header, nullptr, &size, 0, image.data().data(), 0, nullptr)) {
    throw Error(ErrorCode::IoError, fmt::format("png sizing failed: {}", header.message));
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&header, out.data(), &size, 0, image.data().data(), 0, nullptr)) {
    throw Error(ErrorCode::IoError, fmt::format("png encode failed: {}", header.message));
  }
  out.resize(size);
  return out;
}

void write_png(const std::filesystem::path& path, const Image& image) {
  const auto bytes = encode_png(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, fmt::format("cannot write {}", path.string()));
}

Image crop_screenshot(const Image& image, const Rect& crop) {
  if (crop.left < 0 || crop.top < 0 || crop.right > image.width() ||
      crop.bottom > image.height() || crop.left >= crop.right || crop.top >= crop.bottom) {
    throw Error(ErrorCode::CropOutOfBounds,
                fmt::format("{} outside {}x{} image", format_bounds(crop), image.width(),
                            image.height()));
  }
  Image out(crop.width(), crop.height());
  const auto row_bytes = static_cast<std::size_t>(crop.width()) * Image::kChannels;
  for (int y = 0; y < crop.height(); ++y) {
    std::memcpy(out.pixel(0, y).data(), image.pixel(crop.left, crop.top + y).data(), row_bytes);
  }
  return out;
}

}  // namespace hear
