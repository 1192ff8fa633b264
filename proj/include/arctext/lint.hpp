// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <set>
#include <string>
#include <vector>

#include "arctext/model.hpp"

namespace arctext {

/// floor((in + pad_total - dilation*(kernel-1) - 1) / stride) + 1.
/// Throws InvalidSpec for out-of-domain arguments and NonPositiveOutput when
/// the window does not fit.
Int conv_output_extent(Int in, Int kernel, Int stride, Int pad_total, Int dilation);

/// Pooling uses the same window arithmetic as convolution.
Int pool_output_extent(Int in, Int kernel, Int stride, Int pad_total, Int dilation);

enum class ShapeStatus { Ok, Mismatch, Unchecked };

std::string_view to_string(ShapeStatus status);

struct ShapeEntry {
  std::string node;
  std::vector<Int> expected;
  std::vector<Int> declared;
  ShapeStatus status = ShapeStatus::Unchecked;
  std::string note;  // reason for a mismatch or for skipping the node
};

struct ShapeReport {
  std::vector<ShapeEntry> entries;  // one per node, by name
  Diagnostics warnings;             // mismatches plus cross-node findings

  std::size_t mismatch_count() const;
  bool clean() const { return warnings.findings.empty(); }
};

struct LintOptions {
  /// MF operations allowed to change shape.
  std::set<std::string> shape_changing_ops{"Concatenation", "Interpolation"};
};

/// Checks declared out_size against the arithmetic implied by each node's
/// own in_size and parameters. Never modifies the graph; every finding is a
/// warning.
ShapeReport lint_shapes(const ArchGraph& g, const LintOptions& options = {});

}  // namespace arctext
