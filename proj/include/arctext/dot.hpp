// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "arctext/canonicalizer.hpp"
#include "arctext/model.hpp"

namespace arctext {

/// Graphviz digraph with one node per unit (labelled "id:<pos>" plus a short
/// kind summary), nodes listed by position and edges by position pairs.
std::string export_dot(const ArchGraph& g, const CanonicalOrder& order);

/// e.g. "conv 7-7 /2-2 -> 112-112-64", "pool Max 3-3 /2-2", "full 64->1000", "mf ReLU".
std::string kind_summary(const NodeSpec& spec);

}  // namespace arctext
