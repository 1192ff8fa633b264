// SPDX-License-Identifier: Apache-2.0

#include "arctext/codec.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <set>

#include "arctext/error.hpp"

namespace arctext {

std::string synthesized_name(Int id) { return "n" + std::to_string(id); }

std::string UnitLine::text() const {
  std::string out = "id:" + std::to_string(id);
  for (const auto& f : fields) {
    out += ';';
    out += f.key;
    out += ':';
    out += f.value;
  }
  out += ";connect_to:";
  out += connect_to ? join_ints(*connect_to) : "Null";
  return out;
}

const std::string* UnitLine::field(std::string_view key) const {
  for (const auto& f : fields) {
    if (f.key == key) return &f.value;
  }
  return nullptr;
}

UnitLine render_unit(const NodeSpec& spec, Int id, const ConnectTo& connect_to) {
  check_spec(spec);
  if (id < 1) throw Error(ErrorCode::InvalidSpec, "id must be >= 1, got " + std::to_string(id));
  if (connect_to) {
    if (connect_to->empty()) throw Error(ErrorCode::InvalidSpec, "connect_to must be Null or a non-empty id list");
    for (std::size_t i = 0; i < connect_to->size(); ++i) {
      const Int c = (*connect_to)[i];
      if (c < 1 || (i > 0 && c <= (*connect_to)[i - 1])) {
        throw Error(ErrorCode::InvalidSpec, "connect_to ids must be strictly ascending positive integers");
      }
    }
  }
  return UnitLine{kind_of(spec), id, basic_fields(spec), connect_to};
}

Description render_description(const ArchGraph& g, const CanonicalizerOptions& options) {
  return render_description(g, assign_positions(g, options));
}

Description render_description(const ArchGraph& g, const CanonicalOrder& order) {
  Description d;
  for (const auto& name : order.by_position()) {
    ConnectTo connect_to;
    const auto& succ = g.successors(name);
    if (!succ.empty()) {
      std::vector<Int> ids;
      for (const auto& s : succ) ids.push_back(order.position(s));
      std::sort(ids.begin(), ids.end());
      connect_to = std::move(ids);
    }
    d.lines.push_back(render_unit(g.spec(name), order.position(name), connect_to));
  }
  for (const auto& line : d.lines) {
    if (!d.text.empty()) d.text += '\n';
    d.text += line.text();
  }
  return d;
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

struct RawField {
  std::string_view key;
  std::string_view value;
  bool has_colon = false;
};

std::vector<RawField> split_fields(std::string_view line) {
  std::vector<RawField> out;
  for (auto part : split(line, ';')) {
    const auto colon = part.find(':');
    if (colon == std::string_view::npos) {
      out.push_back({part, {}, false});
    } else {
      out.push_back({part.substr(0, colon), part.substr(colon + 1), true});
    }
  }
  return out;
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedLine, what); }

Int parse_int(std::string_view s, std::string_view key) {
  const bool digits = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (!digits || (s.size() > 1 && s.front() == '0')) {
    malformed("'" + std::string(key) + "' expects a base-10 integer, got '" + std::string(s) + "'");
  }
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    malformed("'" + std::string(key) + "' value '" + std::string(s) + "' is out of range");
  }
  return v;
}

std::vector<Int> parse_ints(std::string_view s, std::string_view key, std::initializer_list<std::size_t> arities) {
  std::vector<Int> out;
  for (auto part : split(s, '-')) out.push_back(parse_int(part, key));
  if (std::find(arities.begin(), arities.end(), out.size()) == arities.end()) {
    std::string expected;
    for (auto a : arities) expected += (expected.empty() ? "" : " or ") + std::to_string(a);
    malformed("'" + std::string(key) + "' expects " + expected + " integers, got " + std::to_string(out.size()));
  }
  return out;
}

Shape3 parse_shape3(std::string_view s, std::string_view key) {
  const auto v = parse_ints(s, key, {3});
  return {v[0], v[1], v[2]};
}

bool parse_bool(std::string_view s) {
  if (s == "Yes") return true;
  if (s == "No") return false;
  malformed("'bias_used' expects Yes or No, got '" + std::string(s) + "'");
}

std::string parse_token(std::string_view s, std::string_view key) {
  if (s.empty() || s.find_first_of(";:-\n\r") != std::string_view::npos) {
    malformed("'" + std::string(key) + "' expects a plain token, got '" + std::string(s) + "'");
  }
  return std::string(s);
}

const std::array<std::string_view, 10> kConvKeys = {"id",     "in_size",  "out_size", "kernel",    "stride",
                                                    "padding", "dilation", "groups",   "bias_used", "connect_to"};
const std::array<std::string_view, 10> kPoolKeys = {"id",      "type",     "in_size",   "out_size",  "kernel",
                                                    "stride",  "padding",  "dilation",  "bias_used", "connect_to"};
const std::array<std::string_view, 6> kMFKeys = {"id", "name", "in_size", "out_size", "value", "connect_to"};

template <std::size_t N>
void expect_keys(const std::vector<RawField>& fields, const std::array<std::string_view, N>& keys, UnitKind kind) {
  for (std::size_t i = 0; i < std::max(fields.size(), keys.size()); ++i) {
    if (i < fields.size() && !fields[i].has_colon) {
      malformed("field " + std::to_string(i + 1) + " ('" + std::string(fields[i].key) + "') has no ':' separator");
    }
    if (i >= fields.size() || i >= keys.size() || fields[i].key != keys[i]) {
      const std::string got = i < fields.size() ? "'" + std::string(fields[i].key) + "'" : "end of line";
      const std::string want = i < keys.size() ? "'" + std::string(keys[i]) + "'" : "end of line";
      malformed(std::string(to_string(kind)) + " unit: field " + std::to_string(i + 1) + " should be " + want +
                ", got " + got);
    }
  }
}

ConnectTo parse_connect_to(std::string_view s) {
  if (s == "Null") return std::nullopt;
  std::vector<Int> ids;
  for (auto part : split(s, '-')) ids.push_back(parse_int(part, "connect_to"));
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 1 || (i > 0 && ids[i] <= ids[i - 1])) {
      malformed("'connect_to' ids must be strictly ascending positive integers");
    }
  }
  return ids;
}

NodeSpec decode_spec(UnitKind kind, const std::vector<RawField>& f) {
  switch (kind) {
    case UnitKind::Conv: {
      ConvSpec c;
      c.in_size = parse_shape3(f[1].value, "in_size");
      c.out_size = parse_shape3(f[2].value, "out_size");
      const auto k = parse_ints(f[3].value, "kernel", {2});
      c.kernel = {k[0], k[1]};
      const auto s = parse_ints(f[4].value, "stride", {2});
      c.stride = {s[0], s[1]};
      const auto p = parse_ints(f[5].value, "padding", {8});
      c.padding = {{p[0], p[1]}, {p[2], p[3]}, {p[4], p[5]}, {p[6], p[7]}};
      c.dilation = parse_int(f[6].value, "dilation");
      c.groups = parse_int(f[7].value, "groups");
      c.bias_used = parse_bool(f[8].value);
      return c;
    }
    case UnitKind::Pool: {
      PoolSpec p;
      if (f[1].value == "Max") {
        p.pool_type = PoolType::Max;
      } else if (f[1].value == "Avg") {
        p.pool_type = PoolType::Avg;
      } else {
        malformed("'type' expects Max or Avg, got '" + std::string(f[1].value) + "'");
      }
      p.in_size = parse_shape3(f[2].value, "in_size");
      p.out_size = parse_shape3(f[3].value, "out_size");
      const auto k = parse_ints(f[4].value, "kernel", {2});
      p.kernel = {k[0], k[1]};
      const auto s = parse_ints(f[5].value, "stride", {2});
      p.stride = {s[0], s[1]};
      const auto pad = parse_ints(f[6].value, "padding", {4});
      p.padding = {pad[0], pad[1], pad[2], pad[3]};
      p.dilation = parse_int(f[7].value, "dilation");
      p.bias_used = parse_bool(f[8].value);
      return p;
    }
    case UnitKind::Full: {
      FullSpec s;
      s.in_size = parse_int(f[1].value, "in_size");
      s.out_size = parse_int(f[2].value, "out_size");
      if (f.size() == 5) s.act_fun = parse_token(f[3].value, "act_fun");
      return s;
    }
    case UnitKind::MF: {
      MFSpec m;
      m.op_name = parse_token(f[1].value, "name");
      m.in_size = parse_ints(f[2].value, "in_size", {1, 3});
      m.out_size = parse_ints(f[3].value, "out_size", {1, 3});
      if (f[4].value != "Null") {
        for (auto v : split(f[4].value, '-')) m.values.push_back(parse_token(v, "value"));
      }
      return m;
    }
  }
  malformed("unknown unit kind");
}

}  // namespace

UnitKind classify_line(std::string_view line) {
  bool type = false, name = false, kernel = false, in_size = false;
  for (const auto& f : split_fields(line)) {
    if (!f.has_colon) continue;
    type |= f.key == "type";
    name |= f.key == "name";
    kernel |= f.key == "kernel";
    in_size |= f.key == "in_size";
  }
  if (type) return UnitKind::Pool;
  if (name) return UnitKind::MF;
  if (kernel) return UnitKind::Conv;
  if (in_size) return UnitKind::Full;
  throw Error(ErrorCode::UnclassifiableLine, "cannot tell the unit kind of '" + std::string(line) + "'");
}

ParsedUnit parse_unit(std::string_view line) {
  const UnitKind kind = classify_line(line);
  const auto fields = split_fields(line);

  switch (kind) {
    case UnitKind::Conv: expect_keys(fields, kConvKeys, kind); break;
    case UnitKind::Pool: expect_keys(fields, kPoolKeys, kind); break;
    case UnitKind::MF: expect_keys(fields, kMFKeys, kind); break;
    case UnitKind::Full:
      if (fields.size() == 5) {
        expect_keys(fields, std::array<std::string_view, 5>{"id", "in_size", "out_size", "act_fun", "connect_to"},
                    kind);
      } else {
        expect_keys(fields, std::array<std::string_view, 4>{"id", "in_size", "out_size", "connect_to"}, kind);
      }
      break;
  }

  const Int id = parse_int(fields.front().value, "id");
  if (id < 1) malformed("'id' must be >= 1");
  NodeSpec spec = decode_spec(kind, fields);
  try {
    check_spec(spec);
  } catch (const Error& e) {
    malformed(e.what());
  }

  UnitLine unit{kind, id, {}, parse_connect_to(fields.back().value)};
  for (std::size_t i = 1; i + 1 < fields.size(); ++i) {
    unit.fields.push_back({std::string(fields[i].key), std::string(fields[i].value)});
  }
  // Anything that decodes but would render differently (e.g. unsorted MF
  // values) is a second spelling of the same unit.
  if (unit.fields != basic_fields(spec)) malformed("fields are not in canonical form");
  return {std::move(unit), std::move(spec)};
}

ParsedDescription parse_description(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::EmptyInput, "the description is empty");

  std::vector<ParsedUnit> units;
  const auto lines = split(text, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      units.push_back(parse_unit(lines[i]));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(i + 1) + ": " + e.what());
    }
  }

  const auto n = static_cast<Int>(units.size());
  std::set<Int> ids;
  for (const auto& u : units) {
    if (!ids.insert(u.line.id).second) {
      throw Error(ErrorCode::DuplicateId, "id " + std::to_string(u.line.id) + " appears more than once");
    }
  }
  if (*ids.begin() != 1 || *ids.rbegin() != n) {
    throw Error(ErrorCode::NonContiguousIds, "ids must be exactly 1.." + std::to_string(n));
  }
  for (Int i = 0; i < n; ++i) {
    if (units[static_cast<std::size_t>(i)].line.id != i + 1) {
      throw Error(ErrorCode::MalformedLine, "line " + std::to_string(i + 1) + " carries id " +
                                                std::to_string(units[static_cast<std::size_t>(i)].line.id) +
                                                "; lines must be in ascending id order");
    }
  }

  Int sinks = 0;
  std::vector<std::pair<std::string, NodeSpec>> nodes;
  std::vector<Edge> edges;
  for (const auto& u : units) {
    nodes.emplace_back(synthesized_name(u.line.id), u.spec);
    if (!u.line.connect_to) {
      if (++sinks > 1) throw Error(ErrorCode::MultipleSinks, "more than one unit has connect_to:Null");
      continue;
    }
    for (Int target : *u.line.connect_to) {
      if (target > n) {
        throw Error(ErrorCode::DanglingConnect, "id " + std::to_string(u.line.id) + " connects to missing id " +
                                                    std::to_string(target));
      }
      edges.emplace_back(synthesized_name(u.line.id), synthesized_name(target));
    }
  }

  ParsedDescription out{build_graph(std::move(nodes), std::move(edges)), {}, {}};
  out.order.n = n;
  for (Int i = 1; i <= n; ++i) out.order.positions[synthesized_name(i)] = i;
  for (auto& u : units) out.description.lines.push_back(std::move(u.line));
  out.description.text = std::string(text);
  return out;
}

}  // namespace arctext
