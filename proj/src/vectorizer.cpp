// SPDX-License-Identifier: Apache-2.0

#include "arctext/vectorizer.hpp"

#include <charconv>

#include "arctext/error.hpp"
#include "json.hpp"

namespace arctext {
namespace {

constexpr std::array<std::string_view, 26> kStructural = {
    "<pad>",  "<unk>",      "<num>", ";",      ":",        "-",       "id",     "in_size", "out_size",
    "kernel", "stride",     "padding", "dilation", "groups", "bias_used", "connect_to", "type", "name",
    "act_fun", "value",     "Max",   "Avg",    "Yes",      "No",      "Null",   "\n",
};

constexpr std::array<std::string_view, 6> kCommonOps = {"ReLU", "BN", "Dropout", "Addition", "Concatenation",
                                                        "Interpolation"};

bool is_separator(char c) { return c == ';' || c == ':' || c == '-'; }

// NUM tokens are only used when the value prints back to the same text, so
// detokenization is exact.
std::optional<double> as_number(std::string_view word) {
  if (word.empty() || word.front() < '0' || word.front() > '9') return std::nullopt;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), v);
  if (ec != std::errc{} || ptr != word.data() + word.size()) return std::nullopt;
  if (format_number(v) != word) return std::nullopt;
  return v;
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ec == std::errc{} ? ptr : buf.data());
}

std::size_t Vocabulary::structural_count() { return kStructural.size(); }

Vocabulary Vocabulary::standard() {
  Vocabulary v;
  for (auto t : kStructural) v.intern(t);
  for (auto t : kCommonOps) v.intern(t);
  return v;
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
  auto it = ids_.find(token);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

TokenId Vocabulary::intern(std::string_view token) {
  if (auto id = find(token)) return *id;
  if (closed_) throw Error(ErrorCode::UnknownToken, "token '" + std::string(token) + "' is not in the vocabulary");
  const auto id = static_cast<TokenId>(tokens_.size());
  tokens_.emplace_back(token);
  ids_.emplace(std::string(token), id);
  return id;
}

const std::string& Vocabulary::token(TokenId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    throw Error(ErrorCode::UnknownToken, "token id " + std::to_string(id) + " is not in the vocabulary");
  }
  return tokens_[static_cast<std::size_t>(id)];
}

Vocabulary Vocabulary::from_json_text(std::string_view text, bool closed) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, std::string("vocabulary: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::SchemaError, "vocabulary must be an object of token -> id");

  std::map<TokenId, std::string> by_id;
  for (const auto& [token, id] : doc.items()) {
    if (!id.is_number_integer() || id.get<std::int64_t>() < 0 || id.get<std::int64_t>() > INT32_MAX) {
      throw Error(ErrorCode::SchemaError, "vocabulary id for '" + token + "' must be a non-negative integer");
    }
    if (!by_id.emplace(id.get<TokenId>(), token).second) {
      throw Error(ErrorCode::SchemaError, "vocabulary id " + std::to_string(id.get<TokenId>()) + " is used twice");
    }
  }
  Vocabulary v;
  TokenId expected = 0;
  for (const auto& [id, token] : by_id) {
    if (id != expected++) throw Error(ErrorCode::SchemaError, "vocabulary ids must be contiguous from 0");
    if (static_cast<std::size_t>(id) < kStructural.size() && token != kStructural[static_cast<std::size_t>(id)]) {
      throw Error(ErrorCode::SchemaError, "vocabulary id " + std::to_string(id) + " must be '" +
                                              std::string(kStructural[static_cast<std::size_t>(id)]) + "'");
    }
    v.intern(token);
  }
  if (v.size() < kStructural.size()) throw Error(ErrorCode::SchemaError, "vocabulary lacks the structural tokens");
  v.closed_ = closed;
  return v;
}

std::string Vocabulary::to_json_text() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < tokens_.size(); ++i) doc[tokens_[i]] = i;
  return doc.dump(2) + "\n";
}

TokenStream tokenize(const Description& d, Vocabulary& vocab) {
  TokenStream stream;
  for (const auto& line : d.lines) {
    const std::string text = line.text();
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
      if (is_separator(text[i])) {
        tokens.push_back({vocab.intern(std::string_view(&text[i], 1)), std::nullopt});
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < text.size() && !is_separator(text[j])) ++j;
      const std::string_view word(text.data() + i, j - i);
      if (auto number = as_number(word)) {
        tokens.push_back({Vocabulary::kNumber, number});
      } else {
        tokens.push_back({vocab.intern(word), std::nullopt});
      }
      i = j;
    }
    stream.units.push_back(std::move(tokens));
  }
  return stream;
}

TokenStream tokenize_text(std::string_view text, Vocabulary& vocab) {
  return tokenize(parse_description(text).description, vocab);
}

std::string detokenize(const TokenStream& stream, const Vocabulary& vocab) {
  std::string out;
  for (std::size_t u = 0; u < stream.units.size(); ++u) {
    if (u > 0) out += '\n';
    for (const auto& t : stream.units[u]) {
      if (t.id == Vocabulary::kNumber && t.value) {
        out += format_number(*t.value);
      } else {
        out += vocab.token(t.id);
      }
    }
  }
  return out;
}

const std::array<std::string_view, kUnitVectorLength>& unit_vector_slots() {
  static constexpr std::array<std::string_view, kUnitVectorLength> kSlots = {
      "kind_conv", "kind_pool", "kind_full", "kind_mf",  "id",      "in_w",     "in_h",     "in_c",
      "out_w",     "out_h",     "out_c",     "kernel_w", "kernel_h", "stride_v", "stride_h", "pad_up",
      "pad_down",  "pad_left",  "pad_right", "dilation", "groups",  "bias",     "pool_max", "mf_value",
  };
  return kSlots;
}

namespace {

std::vector<double> numbers(const std::string* value) {
  std::vector<double> out;
  if (!value) return out;
  std::size_t start = 0;
  for (;;) {
    const auto end = value->find('-', start);
    const auto part = value->substr(start, end == std::string::npos ? std::string::npos : end - start);
    double v = 0;
    std::from_chars(part.data(), part.data() + part.size(), v);
    out.push_back(v);
    if (end == std::string::npos) return out;
    start = end + 1;
  }
}

void put(UnitVector& v, std::size_t slot, const std::vector<double>& values, std::size_t width) {
  for (std::size_t i = 0; i < width && i < values.size(); ++i) v[slot + i] = values[i];
}

}  // namespace

UnitVector unit_vector(const UnitLine& line) {
  UnitVector v{};
  v[static_cast<std::size_t>(line.kind)] = 1.0;
  v[4] = static_cast<double>(line.id);
  put(v, 5, numbers(line.field("in_size")), 3);
  put(v, 8, numbers(line.field("out_size")), 3);
  put(v, 11, numbers(line.field("kernel")), 2);
  put(v, 13, numbers(line.field("stride")), 2);

  const auto padding = numbers(line.field("padding"));
  if (padding.size() == 8) {
    // conv: (value, count) per direction; only the count affects extent
    for (std::size_t d = 0; d < 4; ++d) v[15 + d] = padding[2 * d + 1];
  } else {
    put(v, 15, padding, 4);
  }

  put(v, 19, numbers(line.field("dilation")), 1);
  put(v, 20, numbers(line.field("groups")), 1);
  if (const auto* bias = line.field("bias_used")) v[21] = *bias == "Yes" ? 1.0 : 0.0;
  if (const auto* type = line.field("type")) v[22] = *type == "Max" ? 1.0 : 0.0;

  if (const auto* value = line.field("value"); value && *value != "Null") {
    std::size_t start = 0;
    for (;;) {
      const auto end = value->find('-', start);
      const auto part = value->substr(start, end == std::string::npos ? std::string::npos : end - start);
      double number = 0;
      const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), number);
      if (ec == std::errc{} && ptr == part.data() + part.size() && !part.empty() && part.front() >= '0' &&
          part.front() <= '9') {
        v[23] = number;
        break;
      }
      if (end == std::string::npos) break;
      start = end + 1;
    }
  }
  return v;
}

std::string vectors_csv(const Description& d) {
  std::string out;
  for (const auto& slot : unit_vector_slots()) {
    if (!out.empty()) out += ',';
    out += slot;
  }
  out += '\n';
  for (const auto& line : d.lines) {
    const auto v = unit_vector(line);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) out += ',';
      out += format_number(v[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace arctext
