// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "arctext/model.hpp"
#include "arctext/sha224.hpp"

namespace arctext {

inline constexpr std::size_t kDefaultMaxPaths = 100000;

struct CanonicalizerOptions {
  /// Upper bound on the number of maximal candidate paths enumerated in one
  /// iteration; exceeding it raises PathExplosion.
  std::size_t max_paths = kDefaultMaxPaths;
};

/// Node name -> position. A partial order (fewer entries than `n`) is used
/// while positions are being assigned.
struct CanonicalOrder {
  std::map<std::string, Int> positions;
  Int n = 0;

  bool is_numbered(const std::string& name) const { return positions.count(name) != 0; }
  Int position(const std::string& name) const { return positions.at(name); }
  /// Names indexed by position - 1. Requires a complete order.
  std::vector<std::string> by_position() const;

  bool operator==(const CanonicalOrder&) const = default;
};

struct PathCandidate {
  std::vector<std::string> nodes;
  Digest digest{};
  std::string basic_string;
};

struct Terminals {
  std::string source;
  std::string sink;
};

/// The unique indegree-0 and outdegree-0 nodes. Throws NoNodes,
/// AmbiguousSource or AmbiguousSink.
Terminals detect_terminals(const ArchGraph& g);

/// Basic properties of one node joined with ';' (no id, no connect_to).
std::string basic_string(const NodeSpec& spec);

/// Digest of the basic strings of the nodes along `path`, joined with '\n'.
/// Throws BrokenPath when consecutive nodes are not connected.
PathCandidate path_digest(const std::vector<std::string>& path, const ArchGraph& g);

/// All source->sink paths of maximal node count among those that contain at
/// least one node not yet in `order`. Empty when every such path is fully
/// numbered. Paths are returned in a deterministic order.
std::vector<PathCandidate> longest_unnumbered_paths(const ArchGraph& g, const CanonicalOrder& order,
                                                    const CanonicalizerOptions& options = {});

/// Assigns every node a position in 1..n: the source gets 1, the sink n, and
/// the rest are numbered along repeatedly extracted longest paths, ties broken
/// by the largest path digest.
CanonicalOrder assign_positions(const ArchGraph& g, const CanonicalizerOptions& options = {});

/// Digest comparison as 224-bit big-endian unsigned integers.
inline bool digest_less(const Digest& a, const Digest& b) { return a < b; }

}  // namespace arctext
