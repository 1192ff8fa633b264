// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace arctext {

using Digest = std::array<std::uint8_t, 28>;

// SHA-224 (FIPS 180-4 / RFC 3874): SHA-256 compression with its own initial
// state, truncated to 224 bits.
class Sha224 {
 public:
  Sha224();

  void update(std::string_view bytes);
  Digest finish();

 private:
  void compress(const std::uint8_t* block);

  std::array<std::uint32_t, 8> state_;
  std::array<std::uint8_t, 64> buffer_{};
  std::size_t buffered_ = 0;
  std::uint64_t total_bytes_ = 0;
};

Digest sha224(std::string_view bytes);

/// Lowercase, 56 characters.
std::string to_hex(const Digest& digest);

}  // namespace arctext
