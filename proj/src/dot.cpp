// SPDX-License-Identifier: Apache-2.0

#include "arctext/dot.hpp"

#include <algorithm>
#include <sstream>

#include "arctext/fields.hpp"

namespace arctext {

std::string kind_summary(const NodeSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConvSpec>) {
          return "conv " + join_ints({s.kernel.width, s.kernel.height}) + " /" +
                 join_ints({s.stride.vertical, s.stride.horizontal}) + " -> " +
                 join_ints({s.out_size.width, s.out_size.height, s.out_size.channels});
        } else if constexpr (std::is_same_v<T, PoolSpec>) {
          return "pool " + std::string(to_string(s.pool_type)) + " " + join_ints({s.kernel.width, s.kernel.height}) +
                 " /" + join_ints({s.stride.vertical, s.stride.horizontal});
        } else if constexpr (std::is_same_v<T, FullSpec>) {
          return "full " + std::to_string(s.in_size) + "->" + std::to_string(s.out_size);
        } else {
          return "mf " + s.op_name;
        }
      },
      spec);
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const ArchGraph& g, const CanonicalOrder& order) {
  std::ostringstream os;
  os << "digraph arctext {\n  node [shape=box];\n";
  const auto names = order.by_position();
  for (const auto& name : names) {
    const Int pos = order.position(name);
    os << "  n" << pos << " [label=\"id:" << pos << "\\n" << escape(kind_summary(g.spec(name))) << "\"];\n";
  }
  std::vector<std::pair<Int, Int>> edges;
  for (const auto& [from, to] : g.edges()) edges.emplace_back(order.position(from), order.position(to));
  std::sort(edges.begin(), edges.end());
  for (const auto& [from, to] : edges) os << "  n" << from << " -> n" << to << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace arctext
