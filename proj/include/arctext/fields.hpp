// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "arctext/model.hpp"

namespace arctext {

/// One "key:value" pair of a unit line.
struct Field {
  std::string key;
  std::string value;

  bool operator==(const Field&) const = default;
};

/// The basic (configuration) properties of a node in text-format order,
/// without `id` and `connect_to`:
///   conv: in_size out_size kernel stride padding dilation groups bias_used
///   pool: type in_size out_size kernel stride padding dilation bias_used
///   full: in_size out_size [act_fun]
///   mf:   name in_size out_size value
std::vector<Field> basic_fields(const NodeSpec& spec);

/// Joins fields as "k1:v1;k2:v2".
std::string join_fields(const std::vector<Field>& fields);

/// Integers joined with '-'.
std::string join_ints(const std::vector<Int>& values);

}  // namespace arctext
