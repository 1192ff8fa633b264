// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arctext/codec.hpp"

namespace arctext {

using TokenId = std::int32_t;

/// A token id plus, for NUM tokens, the number it stands for.
struct Token {
  TokenId id = 0;
  std::optional<double> value;

  bool operator==(const Token&) const = default;
};

/// Tokens per unit line; unit boundaries are kept.
struct TokenStream {
  std::vector<std::vector<Token>> units;

  bool operator==(const TokenStream&) const = default;
};

/// Token <-> id map. Ids 0 and 1 are padding and unknown; the structural
/// tokens (NUM marker, separators, field keys, literals) take the fixed ids
/// 2..structural_count()-1. An open vocabulary interns new words on demand;
/// a closed one rejects them.
class Vocabulary {
 public:
  static constexpr TokenId kPadding = 0;
  static constexpr TokenId kUnknown = 1;
  static constexpr TokenId kNumber = 2;

  /// The structural tokens plus common operation names; open.
  static Vocabulary standard();

  /// Loads a {"token": id, ...} map. The reserved and structural entries
  /// must sit at their fixed ids. Throws SyntaxError / SchemaError.
  static Vocabulary from_json_text(std::string_view text, bool closed = true);
  std::string to_json_text() const;

  std::optional<TokenId> find(std::string_view token) const;
  /// Id of `token`, interning it if the vocabulary is open. Throws
  /// UnknownToken if it is closed and the token is missing.
  TokenId intern(std::string_view token);
  /// Throws UnknownToken for ids outside the vocabulary.
  const std::string& token(TokenId id) const;

  std::size_t size() const { return tokens_.size(); }
  static std::size_t structural_count();

  bool closed() const { return closed_; }
  void set_closed(bool closed) { closed_ = closed; }

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, TokenId, std::less<>> ids_;
  bool closed_ = false;
};

/// Splits each unit line into separators, words and numbers. Words go
/// through `vocab` (and may extend it); numbers become NUM tokens when the
/// value prints back to exactly the same text.
TokenStream tokenize(const Description& d, Vocabulary& vocab);

/// Parses `text` first (EmptyInput etc. propagate), then tokenizes.
TokenStream tokenize_text(std::string_view text, Vocabulary& vocab);

/// Inverse of tokenize: reproduces the description text exactly.
std::string detokenize(const TokenStream& stream, const Vocabulary& vocab);

inline constexpr std::size_t kUnitVectorLength = 24;
using UnitVector = std::array<double, kUnitVectorLength>;

/// Slot layout: kind one-hot (conv, pool, full, mf), id, in_size (3),
/// out_size (3), kernel (2), stride (2), padding totals (up, down, left,
/// right), dilation, groups, bias, pool-is-max, first numeric MF value.
/// Absent fields are 0 and single-entry sizes are right-padded with 0.
UnitVector unit_vector(const UnitLine& line);

const std::array<std::string_view, kUnitVectorLength>& unit_vector_slots();

/// Header row of slot names, then one comma-separated row per unit.
std::string vectors_csv(const Description& d);

/// Shortest decimal text that parses back to `value`.
std::string format_number(double value);

}  // namespace arctext
