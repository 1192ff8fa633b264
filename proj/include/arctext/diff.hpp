// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arctext/codec.hpp"

namespace arctext {

enum class DiffKind { OnlyInA, OnlyInB, KindChanged, FieldChanged };

struct DiffEntry {
  DiffKind kind = DiffKind::FieldChanged;
  Int id = 0;
  std::string key;                    // field name for FieldChanged
  std::optional<std::string> a_value; // absent when the field exists on one side only
  std::optional<std::string> b_value;

  bool operator==(const DiffEntry&) const = default;
};

struct DescriptionDiff {
  std::size_t a_lines = 0;
  std::size_t b_lines = 0;
  std::vector<DiffEntry> entries;  // ascending id

  bool empty() const { return entries.empty(); }
};

/// Aligns lines by id. Shared ids of the same kind are compared field by
/// field, connect_to included.
DescriptionDiff diff_descriptions(const Description& a, const Description& b);

/// One entry per line, e.g. "~ id:13 out_size: 1000 -> 512".
std::string format_diff(const DescriptionDiff& diff);

}  // namespace arctext
