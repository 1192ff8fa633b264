// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arctext/canonicalizer.hpp"
#include "arctext/fields.hpp"
#include "arctext/model.hpp"

namespace arctext {

/// Successor ids of a unit; nullopt renders as the literal "Null".
using ConnectTo = std::optional<std::vector<Int>>;

/// One rendered unit: `id`, the kind's basic fields, then `connect_to`.
struct UnitLine {
  UnitKind kind = UnitKind::Conv;
  Int id = 1;
  std::vector<Field> fields;
  ConnectTo connect_to;

  /// "id:<id>;<fields>;connect_to:<ids or Null>"
  std::string text() const;

  /// Value of a basic field, if present.
  const std::string* field(std::string_view key) const;

  bool operator==(const UnitLine&) const = default;
};

struct Description {
  std::vector<UnitLine> lines;  // ascending id
  std::string text;             // lines joined with '\n', no trailing newline

  bool operator==(const Description&) const = default;
};

/// Throws InvalidSpec for an invalid spec, id < 1, or connect_to ids that are
/// not strictly ascending positive integers.
UnitLine render_unit(const NodeSpec& spec, Int id, const ConnectTo& connect_to);

/// Canonical description of `g`. Propagates canonicalizer errors.
Description render_description(const ArchGraph& g, const CanonicalizerOptions& options = {});

/// Same, for a graph whose order has already been computed.
Description render_description(const ArchGraph& g, const CanonicalOrder& order);

/// pool if a `type` field is present, mf if `name` is, conv if `kernel` is,
/// full for the remaining in_size/out_size lines. Throws UnclassifiableLine.
UnitKind classify_line(std::string_view line);

/// A unit line split back into its parts, with the decoded spec.
struct ParsedUnit {
  UnitLine line;
  NodeSpec spec;
};

/// Strict parse of one line. Throws UnclassifiableLine or MalformedLine.
ParsedUnit parse_unit(std::string_view line);

struct ParsedDescription {
  ArchGraph graph;        // nodes named "n<id>"
  CanonicalOrder order;   // "n<id>" -> id
  Description description;
};

/// Inverse of render_description. One trailing newline is tolerated.
/// Throws EmptyInput, MalformedLine, UnclassifiableLine, DuplicateId,
/// NonContiguousIds, DanglingConnect, MultipleSinks, or a graph-construction
/// error (e.g. CycleDetected) when the connections are not a DAG.
ParsedDescription parse_description(std::string_view text);

/// Node name used for the unit with the given id when parsing.
std::string synthesized_name(Int id);

}  // namespace arctext
