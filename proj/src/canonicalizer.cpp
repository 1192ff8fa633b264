// SPDX-License-Identifier: Apache-2.0

#include "arctext/canonicalizer.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include "arctext/error.hpp"
#include "arctext/fields.hpp"

namespace arctext {

std::vector<std::string> CanonicalOrder::by_position() const {
  std::vector<std::string> names(static_cast<std::size_t>(n));
  for (const auto& [name, pos] : positions) names.at(static_cast<std::size_t>(pos - 1)) = name;
  return names;
}

std::string basic_string(const NodeSpec& spec) { return join_fields(basic_fields(spec)); }

Terminals detect_terminals(const ArchGraph& g) {
  const Diagnostics d = validate_graph(g);
  if (const Finding* f = d.first_error()) {
    const ErrorCode code = f->code == "NoNodes"           ? ErrorCode::NoNodes
                           : f->code == "AmbiguousSource" ? ErrorCode::AmbiguousSource
                                                          : ErrorCode::AmbiguousSink;
    throw Error(code, f->message);
  }
  Terminals t;
  for (const auto& [name, _] : g.nodes()) {
    if (g.predecessors(name).empty()) t.source = name;
    if (g.successors(name).empty()) t.sink = name;
  }
  return t;
}

PathCandidate path_digest(const std::vector<std::string>& path, const ArchGraph& g) {
  PathCandidate c;
  c.nodes = path;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!g.contains(path[i])) throw Error(ErrorCode::BrokenPath, "unknown node '" + path[i] + "' on path");
    if (i > 0) {
      if (!g.has_edge(path[i - 1], path[i])) {
        throw Error(ErrorCode::BrokenPath, "no edge " + path[i - 1] + "->" + path[i]);
      }
      c.basic_string += '\n';
    }
    c.basic_string += basic_string(g.spec(path[i]));
  }
  c.digest = sha224(c.basic_string);
  return c;
}

namespace {

constexpr Int kUnnumbered = 0;

// Index-based view of the graph. Indices follow insertion order, which only
// ever matters as the last-resort tie-break between paths that are
// indistinguishable by every structural key.
class IndexedGraph {
 public:
  explicit IndexedGraph(const ArchGraph& g) : names_(g.insertion_order()) {
    for (std::size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = static_cast<int>(i);
    succ_.resize(names_.size());
    pred_.resize(names_.size());
    basic_.resize(names_.size());
    for (std::size_t i = 0; i < names_.size(); ++i) {
      for (const auto& s : g.successors(names_[i])) succ_[i].push_back(index_.at(s));
      for (const auto& p : g.predecessors(names_[i])) pred_[i].push_back(index_.at(p));
      std::sort(succ_[i].begin(), succ_[i].end());
      std::sort(pred_[i].begin(), pred_[i].end());
      basic_[i] = basic_string(g.spec(names_[i]));
    }
    topo_sort();
  }

  int size() const { return static_cast<int>(names_.size()); }
  int index(const std::string& name) const { return index_.at(name); }
  const std::string& name(int v) const { return names_[v]; }
  const std::vector<int>& succ(int v) const { return succ_[v]; }
  const std::vector<int>& pred(int v) const { return pred_[v]; }
  const std::string& basic(int v) const { return basic_[v]; }
  const std::vector<int>& topo() const { return topo_; }

 private:
  void topo_sort() {
    std::vector<std::size_t> indeg(names_.size());
    std::vector<int> ready;
    for (std::size_t v = 0; v < names_.size(); ++v) {
      indeg[v] = pred_[v].size();
      if (indeg[v] == 0) ready.push_back(static_cast<int>(v));
    }
    while (!ready.empty()) {
      const int v = ready.back();
      ready.pop_back();
      topo_.push_back(v);
      for (int s : succ_[v]) {
        if (--indeg[s] == 0) ready.push_back(s);
      }
    }
  }

  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
  std::vector<std::string> basic_;
  std::vector<int> topo_;
};

using Path = std::vector<int>;

// Longest source->sink paths through at least one unnumbered node.
//
// Two DP tables over the topological order:
//   reach[v]   longest source->v path (node count), 0 if unreachable
//   through[v] longest source->v path containing an unnumbered node, 0 if none
// Maximal paths are then enumerated backwards from the sink, only following
// predecessors that achieve the optimum. A path is split uniquely at its last
// unnumbered node, so no path is produced twice.
class LongestPathFinder {
 public:
  LongestPathFinder(const IndexedGraph& g, int source, int sink, const std::vector<Int>& positions,
                    std::size_t max_paths)
      : g_(g), sink_(sink), positions_(positions), max_paths_(max_paths) {
    const auto n = static_cast<std::size_t>(g.size());
    reach_.assign(n, 0);
    through_.assign(n, 0);
    reach_count_.assign(n, 0);
    through_count_.assign(n, 0);

    reach_[source] = 1;
    reach_count_[source] = 1;
    if (unnumbered(source)) {
      through_[source] = 1;
      through_count_[source] = 1;
    }
    for (int v : g.topo()) {
      if (v == source) continue;
      for (int u : g.pred(v)) {
        if (reach_[u] > 0) reach_[v] = std::max(reach_[v], reach_[u] + 1);
      }
      for (int u : g.pred(v)) {
        if (reach_[u] > 0 && reach_[u] + 1 == reach_[v]) reach_count_[v] = add(reach_count_[v], reach_count_[u]);
      }
      if (unnumbered(v)) {
        through_[v] = reach_[v];
        through_count_[v] = reach_count_[v];
        continue;
      }
      for (int u : g.pred(v)) {
        if (through_[u] > 0) through_[v] = std::max(through_[v], through_[u] + 1);
      }
      for (int u : g.pred(v)) {
        if (through_[u] > 0 && through_[u] + 1 == through_[v]) {
          through_count_[v] = add(through_count_[v], through_count_[u]);
        }
      }
    }
  }

  Int length() const { return through_[sink_]; }

  std::size_t count() const { return through_count_[sink_]; }

  std::vector<Path> enumerate() {
    paths_.clear();
    if (length() == 0) return paths_;
    if (count() > max_paths_) {
      throw Error(ErrorCode::PathExplosion, "more than " + std::to_string(max_paths_) +
                                                " longest candidate paths; raise the path limit to continue");
    }
    Path suffix;
    walk_through(sink_, suffix);
    return std::move(paths_);
  }

 private:
  bool unnumbered(int v) const { return positions_[v] == kUnnumbered; }

  std::size_t add(std::size_t a, std::size_t b) const {
    const std::size_t cap = max_paths_ + 1;
    return std::min(cap, a + b >= a ? a + b : cap);
  }

  void emit(Path& reversed) {
    paths_.emplace_back(reversed.rbegin(), reversed.rend());
  }

  // `suffix` holds the path from v's successor to the sink, reversed.
  void walk_through(int v, Path& suffix) {
    suffix.push_back(v);
    if (unnumbered(v)) {
      walk_reach(v, suffix, /*already_pushed=*/true);
    } else if (g_.pred(v).empty()) {
      emit(suffix);
    } else {
      for (int u : g_.pred(v)) {
        if (through_[u] > 0 && through_[u] + 1 == through_[v]) walk_through(u, suffix);
      }
    }
    suffix.pop_back();
  }

  void walk_reach(int v, Path& suffix, bool already_pushed = false) {
    if (!already_pushed) suffix.push_back(v);
    if (g_.pred(v).empty()) {
      emit(suffix);
    } else {
      for (int u : g_.pred(v)) {
        if (reach_[u] > 0 && reach_[u] + 1 == reach_[v]) walk_reach(u, suffix);
      }
    }
    if (!already_pushed) suffix.pop_back();
  }

  const IndexedGraph& g_;
  int sink_;
  const std::vector<Int>& positions_;
  std::size_t max_paths_;
  std::vector<Int> reach_, through_;
  std::vector<std::size_t> reach_count_, through_count_;
  std::vector<Path> paths_;
};

Digest digest_of(const IndexedGraph& g, const Path& path) {
  Sha224 h;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) h.update("\n");
    h.update(g.basic(path[i]));
  }
  return h.finish();
}

// Colour refinement over the basic strings and the neighbourhood structure.
// The resulting colours depend only on the graph, never on node names or
// input order.
std::vector<int> refined_colours(const IndexedGraph& g) {
  const int n = g.size();
  std::vector<int> colour(n);
  {
    std::vector<std::string> labels;
    for (int v = 0; v < n; ++v) labels.push_back(g.basic(v));
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    for (int v = 0; v < n; ++v) {
      colour[v] = static_cast<int>(std::lower_bound(labels.begin(), labels.end(), g.basic(v)) - labels.begin());
    }
  }

  using Signature = std::tuple<int, std::vector<int>, std::vector<int>>;
  std::size_t classes = 0;
  for (int round = 0; round <= n; ++round) {
    std::vector<Signature> sig(n);
    for (int v = 0; v < n; ++v) {
      std::vector<int> in, out;
      for (int u : g.pred(v)) in.push_back(colour[u]);
      for (int u : g.succ(v)) out.push_back(colour[u]);
      std::sort(in.begin(), in.end());
      std::sort(out.begin(), out.end());
      sig[v] = {colour[v], std::move(in), std::move(out)};
    }
    auto unique_sigs = sig;
    std::sort(unique_sigs.begin(), unique_sigs.end());
    unique_sigs.erase(std::unique(unique_sigs.begin(), unique_sigs.end()), unique_sigs.end());
    for (int v = 0; v < n; ++v) {
      colour[v] = static_cast<int>(std::lower_bound(unique_sigs.begin(), unique_sigs.end(), sig[v]) -
                                   unique_sigs.begin());
    }
    if (unique_sigs.size() == classes) break;
    classes = unique_sigs.size();
  }
  return colour;
}

// Ordering key for paths whose digests are equal: per node, the position it
// already holds (unnumbered sorts last), then its refined colour, then its
// insertion index.
std::vector<std::tuple<Int, int, int>> tie_key(const Path& path, const std::vector<Int>& positions,
                                               const std::vector<int>& colour) {
  std::vector<std::tuple<Int, int, int>> key;
  key.reserve(path.size());
  for (int v : path) {
    const Int pos = positions[v] == kUnnumbered ? std::numeric_limits<Int>::max() : positions[v];
    key.emplace_back(pos, colour[v], v);
  }
  return key;
}

std::vector<Int> positions_vector(const IndexedGraph& ig, const CanonicalOrder& order) {
  std::vector<Int> positions(static_cast<std::size_t>(ig.size()), kUnnumbered);
  for (const auto& [name, pos] : order.positions) positions[ig.index(name)] = pos;
  return positions;
}

}  // namespace

std::vector<PathCandidate> longest_unnumbered_paths(const ArchGraph& g, const CanonicalOrder& order,
                                                    const CanonicalizerOptions& options) {
  const Terminals t = detect_terminals(g);
  const IndexedGraph ig(g);
  const auto positions = positions_vector(ig, order);
  LongestPathFinder finder(ig, ig.index(t.source), ig.index(t.sink), positions, options.max_paths);

  std::vector<PathCandidate> out;
  for (const auto& path : finder.enumerate()) {
    std::vector<std::string> names;
    for (int v : path) names.push_back(ig.name(v));
    out.push_back(path_digest(names, g));
  }
  return out;
}

CanonicalOrder assign_positions(const ArchGraph& g, const CanonicalizerOptions& options) {
  const Terminals t = detect_terminals(g);
  const IndexedGraph ig(g);
  const int source = ig.index(t.source);
  const int sink = ig.index(t.sink);
  const Int n = ig.size();

  std::vector<Int> positions(static_cast<std::size_t>(n), kUnnumbered);
  positions[source] = 1;
  positions[sink] = n;
  Int next = 2;

  std::vector<int> colour;  // computed on the first digest tie
  for (;;) {
    LongestPathFinder finder(ig, source, sink, positions, options.max_paths);
    const auto paths = finder.enumerate();
    if (paths.empty()) break;

    std::size_t best = 0;
    if (paths.size() > 1) {
      std::vector<Digest> digests;
      digests.reserve(paths.size());
      for (const auto& p : paths) digests.push_back(digest_of(ig, p));
      const Digest top = *std::max_element(digests.begin(), digests.end(), digest_less);

      std::vector<std::size_t> tied;
      for (std::size_t i = 0; i < paths.size(); ++i) {
        if (digests[i] == top) tied.push_back(i);
      }
      best = tied.front();
      if (tied.size() > 1) {
        if (colour.empty()) colour = refined_colours(ig);
        auto best_key = tie_key(paths[best], positions, colour);
        for (std::size_t i : tied) {
          auto key = tie_key(paths[i], positions, colour);
          if (key < best_key) {
            best = i;
            best_key = std::move(key);
          }
        }
      }
    }

    for (int v : paths[best]) {
      if (positions[v] == kUnnumbered) positions[v] = next++;
    }
  }

  CanonicalOrder order;
  order.n = n;
  for (int v = 0; v < ig.size(); ++v) {
    if (positions[v] == kUnnumbered) {
      throw Error(ErrorCode::UnreachableNode, "node '" + ig.name(v) + "' lies on no source-to-sink path");
    }
    order.positions[ig.name(v)] = positions[v];
  }
  return order;
}

}  // namespace arctext
