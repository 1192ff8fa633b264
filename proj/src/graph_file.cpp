// SPDX-License-Identifier: Apache-2.0

#include "arctext/graph_file.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "arctext/error.hpp"
#include "json.hpp"

namespace arctext {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_text_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::FileNotFound, path.string() + ": no such file");
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, path.string() + ": cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, path.string() + ": cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, path.string() + ": write failed");
}

namespace {

class RecordReader {
 public:
  RecordReader(const json& record, std::string where) : record_(record), where_(std::move(where)) {}

  [[noreturn]] void fail(const std::string& what) const { throw Error(ErrorCode::SchemaError, where_ + ": " + what); }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, _] : record_.items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) fail("unknown key '" + key + "'");
    }
  }

  bool has(const char* key) const { return record_.contains(key); }

  const json& at(const char* key) const {
    if (!record_.contains(key)) fail(std::string("missing key '") + key + "'");
    return record_.at(key);
  }

  std::string string(const char* key) const {
    const auto& v = at(key);
    if (!v.is_string()) fail(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
  }

  Int integer(const json& v, const std::string& what) const {
    if (!v.is_number_integer()) fail("'" + what + "' must be an integer");
    return v.get<Int>();
  }

  Int integer(const char* key) const { return integer(at(key), key); }

  bool boolean(const char* key) const {
    const auto& v = at(key);
    if (!v.is_boolean()) fail(std::string("'") + key + "' must be true or false");
    return v.get<bool>();
  }

  std::vector<Int> ints(const json& v, const std::string& what, std::initializer_list<std::size_t> sizes) const {
    if (!v.is_array() || std::find(sizes.begin(), sizes.end(), v.size()) == sizes.end()) {
      std::string expected;
      for (auto s : sizes) expected += (expected.empty() ? "" : " or ") + std::to_string(s);
      fail("'" + what + "' must be an array of " + expected + " integers");
    }
    std::vector<Int> out;
    for (const auto& e : v) out.push_back(integer(e, what));
    return out;
  }

  std::vector<Int> ints(const char* key, std::initializer_list<std::size_t> sizes) const {
    return ints(at(key), key, sizes);
  }

  Shape3 shape(const char* key) const {
    const auto v = ints(key, {3});
    return {v[0], v[1], v[2]};
  }

 private:
  const json& record_;
  std::string where_;
};

NodeSpec read_spec(const RecordReader& r, const std::string& kind) {
  if (kind == "conv") {
    r.allow_only({"name", "kind", "in_size", "out_size", "kernel", "stride", "padding", "dilation", "groups",
                  "bias_used"});
    ConvSpec c;
    c.in_size = r.shape("in_size");
    c.out_size = r.shape("out_size");
    const auto k = r.ints("kernel", {2});
    c.kernel = {k[0], k[1]};
    const auto s = r.ints("stride", {2});
    c.stride = {s[0], s[1]};
    const auto& pad = r.at("padding");
    if (!pad.is_array() || pad.size() != 4) r.fail("'padding' must be 4 [value, count] pairs (up, down, left, right)");
    std::array<ConvPad, 4> sides;
    for (std::size_t i = 0; i < 4; ++i) {
      const auto pair = r.ints(pad[i], "padding", {2});
      sides[i] = {pair[0], pair[1]};
    }
    c.padding = {sides[0], sides[1], sides[2], sides[3]};
    c.dilation = r.integer("dilation");
    c.groups = r.integer("groups");
    c.bias_used = r.boolean("bias_used");
    return c;
  }
  if (kind == "pool") {
    r.allow_only({"name", "kind", "pool_type", "in_size", "out_size", "kernel", "stride", "padding", "dilation",
                  "bias_used"});
    PoolSpec p;
    const auto type = r.string("pool_type");
    if (type == "Max") {
      p.pool_type = PoolType::Max;
    } else if (type == "Avg") {
      p.pool_type = PoolType::Avg;
    } else {
      r.fail("'pool_type' must be \"Max\" or \"Avg\", got \"" + type + "\"");
    }
    p.in_size = r.shape("in_size");
    p.out_size = r.shape("out_size");
    const auto k = r.ints("kernel", {2});
    p.kernel = {k[0], k[1]};
    const auto s = r.ints("stride", {2});
    p.stride = {s[0], s[1]};
    const auto pad = r.ints("padding", {4});
    p.padding = {pad[0], pad[1], pad[2], pad[3]};
    p.dilation = r.integer("dilation");
    p.bias_used = r.boolean("bias_used");
    return p;
  }
  if (kind == "full") {
    r.allow_only({"name", "kind", "in_size", "out_size", "act_fun"});
    FullSpec f;
    f.in_size = r.integer("in_size");
    f.out_size = r.integer("out_size");
    if (r.has("act_fun")) f.act_fun = r.string("act_fun");
    return f;
  }
  if (kind == "mf") {
    r.allow_only({"name", "kind", "op_name", "in_size", "out_size", "values"});
    MFSpec m;
    m.op_name = r.string("op_name");
    m.in_size = r.ints("in_size", {1, 3});
    m.out_size = r.ints("out_size", {1, 3});
    const auto& values = r.at("values");
    if (!values.is_array()) r.fail("'values' must be an array of strings");
    for (const auto& v : values) {
      if (!v.is_string()) r.fail("'values' must be an array of strings");
      m.values.push_back(v.get<std::string>());
    }
    return m;
  }
  r.fail("unknown kind '" + kind + "' (expected conv, pool, full or mf)");
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

ArchGraph graph_from_json_text(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::SyntaxError,
                source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + e.what());
  }

  RecordReader top(doc, source);
  if (!doc.is_object()) top.fail("top level must be an object with \"nodes\" and \"edges\"");
  top.allow_only({"nodes", "edges"});
  const auto& nodes = top.at("nodes");
  const auto& edges = top.at("edges");
  if (!nodes.is_array()) top.fail("'nodes' must be an array");
  if (!edges.is_array()) top.fail("'edges' must be an array");

  std::vector<std::pair<std::string, NodeSpec>> specs;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string where = source + ": nodes[" + std::to_string(i) + "]";
    if (!nodes[i].is_object()) RecordReader(nodes[i], where).fail("node record must be an object");
    RecordReader probe(nodes[i], where);
    const auto name = probe.string("name");
    RecordReader r(nodes[i], where + " ('" + name + "')");
    specs.emplace_back(name, read_spec(r, r.string("kind")));
  }

  std::vector<Edge> pairs;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw Error(ErrorCode::SchemaError,
                  source + ": edges[" + std::to_string(i) + "] must be a [from, to] pair of node names");
    }
    pairs.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }

  try {
    return build_graph(std::move(specs), std::move(pairs));
  } catch (const Error& e) {
    throw Error(e.code(), source + ": " + e.what());
  }
}

ArchGraph load_graph_file(const std::filesystem::path& path) {
  return graph_from_json_text(read_text_file(path), path.string());
}

namespace {

ordered_json shape_json(const Shape3& s) { return ordered_json::array({s.width, s.height, s.channels}); }

ordered_json node_json(const std::string& name, const NodeSpec& spec) {
  ordered_json j;
  j["name"] = name;
  j["kind"] = std::string(to_string(kind_of(spec)));
  std::visit(
      [&j](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConvSpec>) {
          j["in_size"] = shape_json(s.in_size);
          j["out_size"] = shape_json(s.out_size);
          j["kernel"] = {s.kernel.width, s.kernel.height};
          j["stride"] = {s.stride.vertical, s.stride.horizontal};
          j["padding"] = ordered_json::array();
          for (const auto* p : {&s.padding.up, &s.padding.down, &s.padding.left, &s.padding.right}) {
            j["padding"].push_back(ordered_json::array({p->value, p->count}));
          }
          j["dilation"] = s.dilation;
          j["groups"] = s.groups;
          j["bias_used"] = s.bias_used;
        } else if constexpr (std::is_same_v<T, PoolSpec>) {
          j["pool_type"] = std::string(to_string(s.pool_type));
          j["in_size"] = shape_json(s.in_size);
          j["out_size"] = shape_json(s.out_size);
          j["kernel"] = {s.kernel.width, s.kernel.height};
          j["stride"] = {s.stride.vertical, s.stride.horizontal};
          j["padding"] = {s.padding.up, s.padding.down, s.padding.left, s.padding.right};
          j["dilation"] = s.dilation;
          j["bias_used"] = s.bias_used;
        } else if constexpr (std::is_same_v<T, FullSpec>) {
          j["in_size"] = s.in_size;
          j["out_size"] = s.out_size;
          if (s.act_fun) j["act_fun"] = *s.act_fun;
        } else {
          j["op_name"] = s.op_name;
          j["in_size"] = s.in_size;
          j["out_size"] = s.out_size;
          j["values"] = s.values;
        }
      },
      spec);
  return j;
}

}  // namespace

std::string graph_to_json_text(const ArchGraph& g, const CanonicalOrder* order) {
  std::vector<std::string> names;
  if (order) {
    names = order->by_position();
  } else {
    for (const auto& [name, _] : g.nodes()) names.push_back(name);
  }
  std::map<std::string, std::size_t> rank;
  for (std::size_t i = 0; i < names.size(); ++i) rank[names[i]] = i;

  std::vector<Edge> edges = g.edges();
  std::sort(edges.begin(), edges.end(), [&rank](const Edge& a, const Edge& b) {
    return std::pair(rank.at(a.first), rank.at(a.second)) < std::pair(rank.at(b.first), rank.at(b.second));
  });

  std::string out = "{\n  \"nodes\": [";
  for (std::size_t i = 0; i < names.size(); ++i) {
    out += i == 0 ? "\n    " : ",\n    ";
    out += node_json(names[i], g.spec(names[i])).dump();
  }
  out += names.empty() ? "],\n  \"edges\": [" : "\n  ],\n  \"edges\": [";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out += i == 0 ? "\n    " : ",\n    ";
    out += ordered_json::array({edges[i].first, edges[i].second}).dump();
  }
  out += edges.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

void save_graph_file(const ArchGraph& g, const std::filesystem::path& path, const CanonicalOrder* order) {
  write_text_file(path, graph_to_json_text(g, order));
}

}  // namespace arctext
