// SPDX-License-Identifier: Apache-2.0

#include "arctext/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "arctext/error.hpp"

namespace arctext {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyNodeName: return "EmptyNodeName";
    case ErrorCode::DuplicateNodeName: return "DuplicateNodeName";
    case ErrorCode::UnknownEdgeEndpoint: return "UnknownEdgeEndpoint";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NoNodes: return "NoNodes";
    case ErrorCode::AmbiguousSource: return "AmbiguousSource";
    case ErrorCode::AmbiguousSink: return "AmbiguousSink";
    case ErrorCode::BrokenPath: return "BrokenPath";
    case ErrorCode::PathExplosion: return "PathExplosion";
    case ErrorCode::UnreachableNode: return "UnreachableNode";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::UnclassifiableLine: return "UnclassifiableLine";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NonContiguousIds: return "NonContiguousIds";
    case ErrorCode::DanglingConnect: return "DanglingConnect";
    case ErrorCode::MultipleSinks: return "MultipleSinks";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonPositiveOutput: return "NonPositiveOutput";
    case ErrorCode::UnknownToken: return "UnknownToken";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

UnitKind kind_of(const NodeSpec& spec) {
  return static_cast<UnitKind>(spec.index());
}

std::string_view to_string(UnitKind kind) {
  switch (kind) {
    case UnitKind::Conv: return "conv";
    case UnitKind::Pool: return "pool";
    case UnitKind::Full: return "full";
    case UnitKind::MF: return "mf";
  }
  return "?";
}

std::string_view to_string(PoolType type) {
  return type == PoolType::Max ? "Max" : "Avg";
}

bool is_plain_token(std::string_view token) {
  if (token.empty()) return false;
  return token.find_first_of(";:-\n\r") == std::string_view::npos;
}

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidSpec, what);
}

void require_positive(Int v, const char* field) {
  if (v < 1) invalid(std::string(field) + " must be >= 1, got " + std::to_string(v));
}

void require_non_negative(Int v, const char* field) {
  if (v < 0) invalid(std::string(field) + " must be >= 0, got " + std::to_string(v));
}

void check_shape(const Shape3& s, const char* field) {
  require_positive(s.width, field);
  require_positive(s.height, field);
  require_positive(s.channels, field);
}

void check_window(const Kernel& k, const Stride& s, Int dilation) {
  require_positive(k.width, "kernel");
  require_positive(k.height, "kernel");
  require_positive(s.vertical, "stride");
  require_positive(s.horizontal, "stride");
  require_positive(dilation, "dilation");
}

void check_mf_shape(const std::vector<Int>& shape, const char* field) {
  if (shape.size() != 1 && shape.size() != 3) {
    invalid(std::string(field) + " must have 1 or 3 entries, got " + std::to_string(shape.size()));
  }
  for (Int v : shape) require_positive(v, field);
}

struct SpecChecker {
  void operator()(const ConvSpec& c) const {
    check_shape(c.in_size, "in_size");
    check_shape(c.out_size, "out_size");
    check_window(c.kernel, c.stride, c.dilation);
    for (const ConvPad* p : {&c.padding.up, &c.padding.down, &c.padding.left, &c.padding.right}) {
      require_non_negative(p->value, "padding value");
      require_non_negative(p->count, "padding count");
    }
    require_positive(c.groups, "groups");
  }

  void operator()(const PoolSpec& p) const {
    check_shape(p.in_size, "in_size");
    check_shape(p.out_size, "out_size");
    check_window(p.kernel, p.stride, p.dilation);
    for (Int v : {p.padding.up, p.padding.down, p.padding.left, p.padding.right}) {
      require_non_negative(v, "padding");
    }
    if (p.in_size.channels != p.out_size.channels) {
      invalid("pooling must keep the channel count (in " + std::to_string(p.in_size.channels) +
              ", out " + std::to_string(p.out_size.channels) + ")");
    }
  }

  void operator()(const FullSpec& f) const {
    require_positive(f.in_size, "in_size");
    require_positive(f.out_size, "out_size");
    if (f.act_fun && !is_plain_token(*f.act_fun)) {
      invalid("act_fun '" + *f.act_fun + "' is not a plain token");
    }
  }

  void operator()(const MFSpec& m) const {
    if (!is_plain_token(m.op_name)) invalid("op_name '" + m.op_name + "' is not a plain token");
    check_mf_shape(m.in_size, "in_size");
    check_mf_shape(m.out_size, "out_size");
    for (const auto& v : m.values) {
      if (!is_plain_token(v)) invalid("value '" + v + "' is not a plain token");
      if (v == "Null") invalid("value 'Null' is reserved");
    }
  }
};

}  // namespace

void check_spec(const NodeSpec& spec) {
  std::visit(SpecChecker{}, spec);
}

NodeSpec normalized(NodeSpec spec) {
  if (auto* mf = std::get_if<MFSpec>(&spec)) std::sort(mf->values.begin(), mf->values.end());
  return spec;
}

const NodeSpec& ArchGraph::spec(const std::string& name) const {
  auto it = nodes_.find(name);
  if (it == nodes_.end()) throw Error(ErrorCode::UnknownEdgeEndpoint, "no node named '" + name + "'");
  return it->second;
}

const std::vector<std::string>& ArchGraph::successors(const std::string& name) const {
  return successors_.at(name);
}

const std::vector<std::string>& ArchGraph::predecessors(const std::string& name) const {
  return predecessors_.at(name);
}

bool ArchGraph::has_edge(const std::string& from, const std::string& to) const {
  auto it = successors_.find(from);
  if (it == successors_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), to);
}

bool operator==(const ArchGraph& a, const ArchGraph& b) {
  if (a.nodes_ != b.nodes_) return false;
  // successor lists are sorted, so comparing them compares the edge sets
  return a.successors_ == b.successors_;
}

namespace {

// Returns the node sequence of one cycle, or empty if the graph is acyclic.
std::vector<std::string> find_cycle(const std::map<std::string, std::vector<std::string>>& succ) {
  enum class Mark { White, Grey, Black };
  std::map<std::string, Mark> mark;
  for (const auto& [name, _] : succ) mark[name] = Mark::White;

  std::vector<std::string> stack;
  for (const auto& [root, _] : succ) {
    if (mark[root] != Mark::White) continue;
    // iterative DFS: frame = (node, next child index)
    std::vector<std::pair<std::string, std::size_t>> frames{{root, 0}};
    mark[root] = Mark::Grey;
    stack = {root};
    while (!frames.empty()) {
      auto& [node, child] = frames.back();
      const auto& kids = succ.at(node);
      if (child == kids.size()) {
        mark[node] = Mark::Black;
        frames.pop_back();
        stack.pop_back();
        continue;
      }
      const std::string next = kids[child++];
      if (mark[next] == Mark::Grey) {
        auto start = std::find(stack.begin(), stack.end(), next);
        std::vector<std::string> cycle(start, stack.end());
        cycle.push_back(next);
        return cycle;
      }
      if (mark[next] == Mark::White) {
        mark[next] = Mark::Grey;
        stack.push_back(next);
        frames.emplace_back(next, 0);
      }
    }
  }
  return {};
}

}  // namespace

ArchGraph build_graph(std::vector<std::pair<std::string, NodeSpec>> nodes, std::vector<Edge> edges) {
  ArchGraph g;
  for (auto& [name, spec] : nodes) {
    if (name.empty()) throw Error(ErrorCode::EmptyNodeName, "node names must be non-empty");
    try {
      check_spec(spec);
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidSpec, "node '" + name + "': " + e.what());
    }
    if (!g.nodes_.emplace(name, normalized(std::move(spec))).second) {
      throw Error(ErrorCode::DuplicateNodeName, "node '" + name + "' is defined more than once");
    }
    g.insertion_order_.push_back(name);
    g.successors_[name];
    g.predecessors_[name];
  }

  std::set<Edge> seen;
  for (const auto& edge : edges) {
    const auto& [from, to] = edge;
    for (const auto* end : {&from, &to}) {
      if (!g.nodes_.count(*end)) {
        throw Error(ErrorCode::UnknownEdgeEndpoint,
                    "edge " + from + "->" + to + " references unknown node '" + *end + "'");
      }
    }
    if (from == to) throw Error(ErrorCode::SelfLoop, "edge " + from + "->" + to + " is a self-loop");
    if (!seen.insert(edge).second) {
      throw Error(ErrorCode::DuplicateEdge, "edge " + from + "->" + to + " appears more than once");
    }
    g.successors_[from].push_back(to);
    g.predecessors_[to].push_back(from);
  }
  for (auto& [_, v] : g.successors_) std::sort(v.begin(), v.end());
  for (auto& [_, v] : g.predecessors_) std::sort(v.begin(), v.end());

  if (auto cycle = find_cycle(g.successors_); !cycle.empty()) {
    std::string path;
    for (const auto& n : cycle) path += (path.empty() ? "" : "->") + n;
    throw Error(ErrorCode::CycleDetected, "cycle " + path);
  }

  g.edges_ = std::move(edges);
  return g;
}

bool Diagnostics::has_errors() const { return error_count() != 0; }

std::size_t Diagnostics::error_count() const {
  return static_cast<std::size_t>(std::count_if(findings.begin(), findings.end(), [](const Finding& f) {
    return f.severity == Severity::Error;
  }));
}

std::size_t Diagnostics::warning_count() const { return findings.size() - error_count(); }

const Finding* Diagnostics::first_error() const {
  for (const auto& f : findings) {
    if (f.severity == Severity::Error) return &f;
  }
  return nullptr;
}

Diagnostics validate_graph(const ArchGraph& g) {
  Diagnostics d;
  auto add = [&d](Severity s, std::string code, std::string subject, std::string message) {
    d.findings.push_back({s, std::move(code), std::move(subject), std::move(message)});
  };

  if (g.size() == 0) {
    add(Severity::Error, "NoNodes", "", "the graph has no nodes");
    return d;
  }

  std::vector<std::string> sources, sinks;
  for (const auto& [name, _] : g.nodes()) {
    const auto in = g.predecessors(name).size();
    const auto out = g.successors(name).size();
    if (in == 0) sources.push_back(name);
    if (out == 0) sinks.push_back(name);
    if (in == 0 && out == 0 && g.size() > 1) {
      add(Severity::Warning, "IsolatedNode", name, "node has no incoming or outgoing edges");
    }
  }

  auto join = [](const std::vector<std::string>& names) {
    std::string s;
    for (const auto& n : names) s += (s.empty() ? "" : ", ") + n;
    return s;
  };

  if (sources.size() != 1) {
    add(Severity::Error, "AmbiguousSource", "",
        "expected exactly one node with indegree 0, found " + std::to_string(sources.size()) + " (" +
            join(sources) + ")");
  } else if (g.successors(sources.front()).size() != 1) {
    add(Severity::Warning, "SourceOutdegreeNotOne", sources.front(),
        "source has outdegree " + std::to_string(g.successors(sources.front()).size()));
  }

  if (sinks.size() != 1) {
    add(Severity::Error, "AmbiguousSink", "",
        "expected exactly one node with outdegree 0, found " + std::to_string(sinks.size()) + " (" +
            join(sinks) + ")");
  } else if (g.predecessors(sinks.front()).size() != 1) {
    add(Severity::Warning, "SinkIndegreeNotOne", sinks.front(),
        "sink has indegree " + std::to_string(g.predecessors(sinks.front()).size()));
  }
  return d;
}

std::string format_finding(const Finding& f) {
  std::ostringstream os;
  os << (f.severity == Severity::Error ? "error" : "warning") << "[" << f.code << "]";
  if (!f.subject.empty()) os << " " << f.subject;
  os << ": " << f.message;
  return os.str();
}

}  // namespace arctext
