// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "arctext/graph_file.hpp"

namespace arctext::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(ARCTEXT_FIXTURE_DIR) / name;
}

inline std::string fixture_text(const std::string& name) { return read_text_file(fixture(name)); }

inline ArchGraph resnet4() { return load_graph_file(fixture("resnet4.json")); }
inline ArchGraph googlenet_fragment() { return load_graph_file(fixture("googlenet_fragment.json")); }

}  // namespace arctext::testing
