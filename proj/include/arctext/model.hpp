// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace arctext {

using Int = std::int64_t;

/// Width, height and channel count of a feature map.
struct Shape3 {
  Int width = 1;
  Int height = 1;
  Int channels = 1;

  auto operator<=>(const Shape3&) const = default;
};

struct Kernel {
  Int width = 1;
  Int height = 1;

  auto operator<=>(const Kernel&) const = default;
};

/// Step sizes of a sliding window. The vertical step comes first, matching
/// the order the text format writes them in.
struct Stride {
  Int vertical = 1;
  Int horizontal = 1;

  auto operator<=>(const Stride&) const = default;
};

/// One direction of convolution padding: the fill value and how many
/// rows/columns of it are added.
struct ConvPad {
  Int value = 0;
  Int count = 0;

  auto operator<=>(const ConvPad&) const = default;
};

struct ConvPadding {
  ConvPad up;
  ConvPad down;
  ConvPad left;
  ConvPad right;

  auto operator<=>(const ConvPadding&) const = default;
};

/// Pooling pads with zeros, so only the counts are recorded.
struct PoolPadding {
  Int up = 0;
  Int down = 0;
  Int left = 0;
  Int right = 0;

  auto operator<=>(const PoolPadding&) const = default;
};

enum class PoolType { Max, Avg };

struct ConvSpec {
  Shape3 in_size;
  Shape3 out_size;
  Kernel kernel;
  Stride stride;
  ConvPadding padding;
  Int dilation = 1;
  Int groups = 1;
  bool bias_used = false;

  auto operator<=>(const ConvSpec&) const = default;
};

struct PoolSpec {
  PoolType pool_type = PoolType::Max;
  Shape3 in_size;
  Shape3 out_size;
  Kernel kernel;
  Stride stride;
  PoolPadding padding;
  Int dilation = 1;
  bool bias_used = false;

  auto operator<=>(const PoolSpec&) const = default;
};

struct FullSpec {
  Int in_size = 1;
  Int out_size = 1;
  std::optional<std::string> act_fun;

  auto operator<=>(const FullSpec&) const = default;
};

/// Any operation that is not a conv/pool/fully-connected layer: activations,
/// batch norm, dropout, merges. Shapes hold either 1 or 3 entries.
struct MFSpec {
  std::string op_name;
  std::vector<Int> in_size;
  std::vector<Int> out_size;
  std::vector<std::string> values;

  auto operator<=>(const MFSpec&) const = default;
};

using NodeSpec = std::variant<ConvSpec, PoolSpec, FullSpec, MFSpec>;

enum class UnitKind { Conv, Pool, Full, MF };

UnitKind kind_of(const NodeSpec& spec);
std::string_view to_string(UnitKind kind);
std::string_view to_string(PoolType type);

/// True when `token` can appear as a bare word in ArcText: non-empty and free
/// of the separator characters and line breaks.
bool is_plain_token(std::string_view token);

/// Throws Error(InvalidSpec) naming the first violated constraint.
void check_spec(const NodeSpec& spec);

/// Returns the spec with MF parameter values in byte order; other kinds are
/// returned unchanged.
NodeSpec normalized(NodeSpec spec);

using Edge = std::pair<std::string, std::string>;

/// A validated, acyclic architecture graph. Only build_graph creates one, so
/// every instance satisfies the structural invariants.
class ArchGraph {
 public:
  const std::map<std::string, NodeSpec>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Node names in the order they were supplied to build_graph.
  const std::vector<std::string>& insertion_order() const { return insertion_order_; }

  std::size_t size() const { return nodes_.size(); }
  bool contains(const std::string& name) const { return nodes_.count(name) != 0; }
  const NodeSpec& spec(const std::string& name) const;

  /// Successor/predecessor names, sorted by name.
  const std::vector<std::string>& successors(const std::string& name) const;
  const std::vector<std::string>& predecessors(const std::string& name) const;

  bool has_edge(const std::string& from, const std::string& to) const;

  /// Equality ignores insertion order: same name->spec map and same edge set.
  friend bool operator==(const ArchGraph& a, const ArchGraph& b);

 private:
  friend ArchGraph build_graph(std::vector<std::pair<std::string, NodeSpec>> nodes,
                               std::vector<Edge> edges);

  std::map<std::string, NodeSpec> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::string> insertion_order_;
  std::map<std::string, std::vector<std::string>> successors_;
  std::map<std::string, std::vector<std::string>> predecessors_;
};

/// Checks every node spec and the structural invariants (unique non-empty
/// names, known endpoints, no self-loops or duplicate edges, acyclic).
/// MF parameter values are stored sorted.
ArchGraph build_graph(std::vector<std::pair<std::string, NodeSpec>> nodes, std::vector<Edge> edges);

enum class Severity { Error, Warning };

struct Finding {
  Severity severity = Severity::Error;
  std::string code;
  std::string subject;  // node name, or "from->to" for edges; empty for graph-wide findings
  std::string message;

  bool operator==(const Finding&) const = default;
};

struct Diagnostics {
  std::vector<Finding> findings;

  bool has_errors() const;
  std::size_t error_count() const;
  std::size_t warning_count() const;
  /// First error finding, if any.
  const Finding* first_error() const;

  bool operator==(const Diagnostics&) const = default;
};

/// Source/sink uniqueness checks. Errors: NoNodes, AmbiguousSource,
/// AmbiguousSink. Warnings: SourceOutdegreeNotOne, SinkIndegreeNotOne,
/// IsolatedNode.
Diagnostics validate_graph(const ArchGraph& g);

std::string format_finding(const Finding& finding);

}  // namespace arctext
