// SPDX-License-Identifier: Apache-2.0

#include "arctext/fields.hpp"

#include <algorithm>

namespace arctext {
namespace {

std::string shape(const Shape3& s) { return join_ints({s.width, s.height, s.channels}); }

std::string yes_no(bool b) { return b ? "Yes" : "No"; }

struct FieldRenderer {
  std::vector<Field> operator()(const ConvSpec& c) const {
    const auto& p = c.padding;
    return {
        {"in_size", shape(c.in_size)},
        {"out_size", shape(c.out_size)},
        {"kernel", join_ints({c.kernel.width, c.kernel.height})},
        {"stride", join_ints({c.stride.vertical, c.stride.horizontal})},
        {"padding", join_ints({p.up.value, p.up.count, p.down.value, p.down.count, p.left.value, p.left.count,
                               p.right.value, p.right.count})},
        {"dilation", std::to_string(c.dilation)},
        {"groups", std::to_string(c.groups)},
        {"bias_used", yes_no(c.bias_used)},
    };
  }

  std::vector<Field> operator()(const PoolSpec& p) const {
    return {
        {"type", std::string(to_string(p.pool_type))},
        {"in_size", shape(p.in_size)},
        {"out_size", shape(p.out_size)},
        {"kernel", join_ints({p.kernel.width, p.kernel.height})},
        {"stride", join_ints({p.stride.vertical, p.stride.horizontal})},
        {"padding", join_ints({p.padding.up, p.padding.down, p.padding.left, p.padding.right})},
        {"dilation", std::to_string(p.dilation)},
        {"bias_used", yes_no(p.bias_used)},
    };
  }

  std::vector<Field> operator()(const FullSpec& f) const {
    std::vector<Field> out{{"in_size", std::to_string(f.in_size)}, {"out_size", std::to_string(f.out_size)}};
    if (f.act_fun) out.push_back({"act_fun", *f.act_fun});
    return out;
  }

  std::vector<Field> operator()(const MFSpec& m) const {
    std::string value;
    if (m.values.empty()) {
      value = "Null";
    } else {
      auto sorted = m.values;
      std::sort(sorted.begin(), sorted.end());
      for (const auto& v : sorted) value += (value.empty() ? "" : "-") + v;
    }
    return {
        {"name", m.op_name},
        {"in_size", join_ints(m.in_size)},
        {"out_size", join_ints(m.out_size)},
        {"value", value},
    };
  }
};

}  // namespace

std::vector<Field> basic_fields(const NodeSpec& spec) { return std::visit(FieldRenderer{}, spec); }

std::string join_fields(const std::vector<Field>& fields) {
  std::string out;
  for (const auto& f : fields) {
    if (!out.empty()) out += ';';
    out += f.key;
    out += ':';
    out += f.value;
  }
  return out;
}

std::string join_ints(const std::vector<Int>& values) {
  std::string out;
  for (Int v : values) {
    if (!out.empty()) out += '-';
    out += std::to_string(v);
  }
  return out;
}

}  // namespace arctext
