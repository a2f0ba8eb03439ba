#include "hear/digest.hpp"

#include <openssl/evp.h>
#include <openssl/sha.h>

#include <array>
#include <fmt/format.h>

namespace hear {

std::string sha256_hex(std::span<const std::uint8_t> data) {
  std::array<unsigned char, SHA256_DIGEST_LENGTH> md{};
  SHA256(data.data(), data.size(), md.data());
  std::string out;
  out.reserve(md.size() * 2);
  for (unsigned char byte : md) out += fmt::format("{:02x}", byte);
  return out;
}

std::string sha256_hex(std::string_view data) {
  return sha256_hex(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

std::string base64_encode(std::span<const std::uint8_t> data) {
  std::string out(4 * ((data.size() + 2) / 3), '\0');
  const int written = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                      data.data(), static_cast<int>(data.size()));
  out.resize(static_cast<std::size_t>(written));
  return out;
}

}  // namespace hear
