// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>
#include <openssl/sha.h>

#include <random>
#include <string>

#include "arctext/sha224.hpp"
#include "support/fixtures.hpp"

namespace arctext {
namespace {

TEST(Sha224, KnownVectors) {
  EXPECT_EQ(to_hex(sha224("")), "d14a028c2a3a2bc9476102bb288234c415a2b01f828ea62ac5b3e42f");
  EXPECT_EQ(to_hex(sha224("abc")), "23097d223405d8228642a477bda255b32aadbce4bda0b3f7e36c9da7");
  EXPECT_EQ(to_hex(sha224("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq")),
            "75388b16512776cc5dba5da1fd890150b0c6455cb4f58b1952522525");
}

TEST(Sha224, MillionAs) {
  EXPECT_EQ(to_hex(sha224(std::string(1000000, 'a'))), "20794655980c91d8bbb4c1ea97618a4bf03f42581948b2ee4ee7ad67");
}

TEST(Sha224, IncrementalMatchesOneShot) {
  const std::string msg(1000, 'x');
  for (std::size_t chunk : {1u, 3u, 55u, 56u, 63u, 64u, 65u, 127u}) {
    Sha224 h;
    for (std::size_t i = 0; i < msg.size(); i += chunk) h.update(std::string_view(msg).substr(i, chunk));
    EXPECT_EQ(h.finish(), sha224(msg)) << "chunk " << chunk;
  }
}

TEST(Sha224, MatchesOpenSsl) {
  std::mt19937_64 rng(224);
  for (std::size_t len = 0; len < 300; ++len) {
    std::string msg(len, '\0');
    for (auto& c : msg) c = static_cast<char>(rng() & 0xff);
    Digest expected{};
    SHA224(reinterpret_cast<const unsigned char*>(msg.data()), msg.size(), expected.data());
    ASSERT_EQ(sha224(msg), expected) << "length " << len;
  }
}

TEST(Sha224, FixtureDigests) {
  EXPECT_EQ(to_hex(sha224(testing::fixture_text("resnet4.arctext"))),
            "c8e38d920c920c105c18b439b5298a166a621f48188334874385e09d");
  EXPECT_EQ(to_hex(sha224(testing::fixture_text("googlenet_fragment.arctext"))),
            "30293b0bd8805982a2ff938f24c7b5e8e5724a0f6b0b65f4c9fd4bf4");
}

TEST(Sha224, HexIsLowercase56) {
  const auto hex = to_hex(sha224("arctext"));
  EXPECT_EQ(hex.size(), 56u);
  EXPECT_EQ(hex.find_first_not_of("0123456789abcdef"), std::string::npos);
}

}  // namespace
}  // namespace arctext
