// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "arctext/canonicalizer.hpp"
#include "arctext/model.hpp"

namespace arctext {

// JSON graph files:
//
//   {
//     "nodes": [
//       {"name": "S", "kind": "conv", "in_size": [32,32,3], "out_size": [32,32,3],
//        "kernel": [1,1], "stride": [1,1], "padding": [[0,0],[0,0],[0,0],[0,0]],
//        "dilation": 1, "groups": 1, "bias_used": false},
//       {"name": "H", "kind": "pool", "pool_type": "Max", ..., "padding": [1,0,1,0], ...},
//       {"name": "J", "kind": "full", "in_size": 2560, "out_size": 512, "act_fun": "ReLU"},
//       {"name": "E", "kind": "mf", "op_name": "Dropout", "in_size": [512], "out_size": [512],
//        "values": ["0.5"]}
//     ],
//     "edges": [["S", "S2"], ...]
//   }
//
// Unknown keys are rejected. act_fun is optional; every other field is required.

/// Parses graph-file text. `source` names the document in error messages.
/// Throws SyntaxError (with line/column), SchemaError, or any build_graph error.
ArchGraph graph_from_json_text(std::string_view text, const std::string& source = "<input>");

/// Throws FileNotFound, then as graph_from_json_text.
ArchGraph load_graph_file(const std::filesystem::path& path);

/// Nodes are written in position order when `order` is given, otherwise by
/// name. Edges follow the same order by (from, to).
std::string graph_to_json_text(const ArchGraph& g, const CanonicalOrder* order = nullptr);

/// Throws IoError when the file cannot be written.
void save_graph_file(const ArchGraph& g, const std::filesystem::path& path, const CanonicalOrder* order = nullptr);

/// Reads a whole file. Throws FileNotFound / IoError.
std::string read_text_file(const std::filesystem::path& path);

/// Writes `text` verbatim. Throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace arctext
