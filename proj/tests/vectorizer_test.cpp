// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>

#include "arctext/codec.hpp"
#include "arctext/error.hpp"
#include "arctext/vectorizer.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

namespace arctext {
namespace {

const std::string kDropout =
    "id:1;name:ReLU;in_size:512;out_size:512;value:Null;connect_to:2\n"
    "id:2;name:Dropout;in_size:512;out_size:512;value:0.5;connect_to:Null";

TEST(Vocabulary, StandardLayout) {
  const auto v = Vocabulary::standard();
  EXPECT_FALSE(v.closed());
  EXPECT_EQ(v.token(Vocabulary::kPadding), "<pad>");
  EXPECT_EQ(v.token(Vocabulary::kUnknown), "<unk>");
  EXPECT_EQ(v.token(Vocabulary::kNumber), "<num>");
  EXPECT_EQ(*v.find(";"), 3);
  EXPECT_GT(v.size(), Vocabulary::structural_count());
  EXPECT_TRUE(v.find("ReLU").has_value());
  EXPECT_FALSE(v.find("Swish").has_value());
}

TEST(Vocabulary, JsonRoundTrip) {
  auto v = Vocabulary::standard();
  v.intern("Swish");
  const auto loaded = Vocabulary::from_json_text(v.to_json_text());
  EXPECT_EQ(loaded, v);
  EXPECT_TRUE(loaded.closed());
  EXPECT_FALSE(Vocabulary::from_json_text(v.to_json_text(), false).closed());
}

TEST(Vocabulary, RejectsBadFiles) {
  auto code = [](const std::string& text) {
    try {
      Vocabulary::from_json_text(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  EXPECT_EQ(code("{"), ErrorCode::SyntaxError);
  EXPECT_EQ(code("[]"), ErrorCode::SchemaError);
  EXPECT_EQ(code(R"({"<pad>":0})"), ErrorCode::SchemaError);
  EXPECT_EQ(code(R"({"<unk>":0,"<pad>":1})"), ErrorCode::SchemaError);
  EXPECT_EQ(code(R"({"<pad>":-1})"), ErrorCode::SchemaError);
}

TEST(Vocabulary, UnknownIds) {
  const auto v = Vocabulary::standard();
  EXPECT_THROW(v.token(-1), Error);
  EXPECT_THROW(v.token(static_cast<TokenId>(v.size())), Error);
}

TEST(Tokenize, NumbersAndLiterals) {
  auto v = Vocabulary::standard();
  const auto stream = tokenize_text(kDropout, v);
  ASSERT_EQ(stream.units.size(), 2u);
  const auto& second = stream.units[1];
  const Token half{Vocabulary::kNumber, 0.5};
  EXPECT_NE(std::find(second.begin(), second.end(), half), second.end());
  const Token null{*v.find("Null"), std::nullopt};
  EXPECT_NE(std::find(stream.units[0].begin(), stream.units[0].end(), null), stream.units[0].end());
  // "id" ":" NUM(1) ";" ...
  EXPECT_EQ(stream.units[0][0].id, *v.find("id"));
  EXPECT_EQ(stream.units[0][1].id, *v.find(":"));
  EXPECT_EQ(stream.units[0][2], (Token{Vocabulary::kNumber, 1.0}));
}

TEST(Tokenize, NonCanonicalNumbersStayWords) {
  auto v = Vocabulary::standard();
  const std::string text = "id:1;name:Scale;in_size:8;out_size:8;value:1.50-2e3;connect_to:Null";
  const auto stream = tokenize_text(text, v);
  EXPECT_TRUE(v.find("1.50").has_value());
  EXPECT_TRUE(v.find("2e3").has_value());
  EXPECT_EQ(detokenize(stream, v), text);
}

TEST(Tokenize, ClosedVocabularyRejectsNewWords) {
  auto v = Vocabulary::standard();
  v.set_closed(true);
  EXPECT_NO_THROW(tokenize_text(kDropout, v));
  try {
    tokenize_text("id:1;name:Swish;in_size:8;out_size:8;value:Null;connect_to:Null", v);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownToken);
  }
}

TEST(Tokenize, LosslessOnFixtures) {
  for (const char* name : {"resnet4.arctext", "googlenet_fragment.arctext"}) {
    auto v = Vocabulary::standard();
    const auto text = testing::fixture_text(name);
    EXPECT_EQ(detokenize(tokenize_text(text, v), v), text) << name;
  }
}

TEST(Tokenize, LosslessOnRandomGraphs) {
  testing::Rng rng(10);
  auto v = Vocabulary::standard();
  for (int i = 0; i < 200; ++i) {
    const auto d = render_description(testing::random_architecture(rng, 5, 30, 3).build());
    EXPECT_EQ(detokenize(tokenize(d, v), v), d.text);
  }
}

TEST(Tokenize, UnitBoundariesKept) {
  auto v = Vocabulary::standard();
  EXPECT_EQ(tokenize_text(testing::fixture_text("googlenet_fragment.arctext"), v).units.size(), 25u);
}

TEST(UnitVector, ConvLine) {
  const auto d = parse_description(testing::fixture_text("googlenet_fragment.arctext")).description;
  const UnitVector expected = {1, 0, 0, 0, 1, 32, 32, 3, 32, 32, 3, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0};
  EXPECT_EQ(unit_vector(d.lines[0]), expected);
}

TEST(UnitVector, PoolLine) {
  const auto d = parse_description(testing::fixture_text("resnet4.arctext")).description;
  const UnitVector expected = {0, 1, 0, 0, 4, 112, 112, 64, 56, 56, 64, 3, 3, 2, 2, 1, 1, 1, 1, 1, 0, 0, 1, 0};
  EXPECT_EQ(unit_vector(d.lines[3]), expected);
}

TEST(UnitVector, FullAndMfLines) {
  const auto d = parse_description(kDropout).description;
  const auto dropout = unit_vector(d.lines[1]);
  EXPECT_EQ(dropout[3], 1.0);
  EXPECT_EQ(dropout[5], 512.0);
  EXPECT_EQ(dropout[6], 0.0);
  EXPECT_EQ(dropout[23], 0.5);

  const auto full = parse_description(testing::fixture_text("resnet4.arctext")).description.lines.back();
  const auto v = unit_vector(full);
  EXPECT_EQ(v[2], 1.0);
  EXPECT_EQ(v[5], 64.0);
  EXPECT_EQ(v[8], 1000.0);
}

TEST(UnitVector, Length) {
  EXPECT_EQ(kUnitVectorLength, 24u);
  EXPECT_EQ(unit_vector_slots().size(), 24u);
  const auto csv = vectors_csv(parse_description(testing::fixture_text("resnet4.arctext")).description);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 14);
  const auto first_row = csv.substr(0, csv.find('\n'));
  EXPECT_EQ(std::count(first_row.begin(), first_row.end(), ','), 23);
}

TEST(FormatNumber, Shortest) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(112), "112");
  EXPECT_EQ(format_number(0.1), "0.1");
}

}  // namespace
}  // namespace arctext
