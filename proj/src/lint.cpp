// SPDX-License-Identifier: Apache-2.0

#include "arctext/lint.hpp"

#include <algorithm>

#include "arctext/error.hpp"
#include "arctext/fields.hpp"

namespace arctext {

Int conv_output_extent(Int in, Int kernel, Int stride, Int pad_total, Int dilation) {
  if (in < 1 || kernel < 1 || stride < 1 || dilation < 1 || pad_total < 0) {
    throw Error(ErrorCode::InvalidSpec, "window arguments out of range");
  }
  const Int span = in + pad_total - dilation * (kernel - 1) - 1;
  if (span < 0) {
    throw Error(ErrorCode::NonPositiveOutput, "window of extent " + std::to_string(dilation * (kernel - 1) + 1) +
                                                  " does not fit input " + std::to_string(in) + " + padding " +
                                                  std::to_string(pad_total));
  }
  return span / stride + 1;
}

Int pool_output_extent(Int in, Int kernel, Int stride, Int pad_total, Int dilation) {
  return conv_output_extent(in, kernel, stride, pad_total, dilation);
}

std::string_view to_string(ShapeStatus status) {
  switch (status) {
    case ShapeStatus::Ok: return "ok";
    case ShapeStatus::Mismatch: return "mismatch";
    case ShapeStatus::Unchecked: return "unchecked";
  }
  return "?";
}

std::size_t ShapeReport::mismatch_count() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const ShapeEntry& e) {
    return e.status == ShapeStatus::Mismatch;
  }));
}

namespace {

std::vector<Int> dims(const Shape3& s) { return {s.width, s.height, s.channels}; }

struct WindowAxes {
  Int pad_vertical;
  Int pad_horizontal;
};

// Expected spatial extents; sets `note` and returns false if the window does
// not fit.
bool window_extents(const Shape3& in, const Kernel& k, const Stride& s, Int dilation, WindowAxes pad,
                    std::vector<Int>& expected, std::string& note) {
  try {
    expected[0] = conv_output_extent(in.width, k.width, s.horizontal, pad.pad_horizontal, dilation);
    expected[1] = conv_output_extent(in.height, k.height, s.vertical, pad.pad_vertical, dilation);
    return true;
  } catch (const Error& e) {
    note = e.what();
    return false;
  }
}

ShapeEntry check_node(const std::string& name, const NodeSpec& spec, const LintOptions& options) {
  ShapeEntry e{name, {}, {}, ShapeStatus::Ok, {}};

  if (const auto* c = std::get_if<ConvSpec>(&spec)) {
    e.declared = dims(c->out_size);
    e.expected = e.declared;
    const auto& p = c->padding;
    const bool fits = window_extents(c->in_size, c->kernel, c->stride, c->dilation,
                                     {p.up.count + p.down.count, p.left.count + p.right.count}, e.expected, e.note);
    if (!fits) {
      e.status = ShapeStatus::Mismatch;
    } else if (c->in_size.channels % c->groups != 0) {
      e.status = ShapeStatus::Mismatch;
      e.note = "groups " + std::to_string(c->groups) + " does not divide " + std::to_string(c->in_size.channels) +
               " input channels";
    }
  } else if (const auto* pl = std::get_if<PoolSpec>(&spec)) {
    e.declared = dims(pl->out_size);
    e.expected = e.declared;
    e.expected[2] = pl->in_size.channels;
    const auto& p = pl->padding;
    if (!window_extents(pl->in_size, pl->kernel, pl->stride, pl->dilation, {p.up + p.down, p.left + p.right},
                        e.expected, e.note)) {
      e.status = ShapeStatus::Mismatch;
    }
  } else if (const auto* f = std::get_if<FullSpec>(&spec)) {
    e.declared = {f->out_size};
    e.status = ShapeStatus::Unchecked;
    e.note = "fully-connected output size is a free parameter";
  } else {
    const auto& m = std::get<MFSpec>(spec);
    e.declared = m.out_size;
    if (options.shape_changing_ops.count(m.op_name)) {
      e.status = ShapeStatus::Unchecked;
      e.note = "'" + m.op_name + "' may change shape";
    } else {
      e.expected = m.in_size;
    }
  }

  if (e.status == ShapeStatus::Ok && e.expected != e.declared) {
    e.status = ShapeStatus::Mismatch;
    e.note = "expected out_size " + join_ints(e.expected) + ", declared " + join_ints(e.declared);
  }
  return e;
}

std::vector<Int> out_size_of(const NodeSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::vector<Int> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FullSpec>) {
          return {s.out_size};
        } else if constexpr (std::is_same_v<T, MFSpec>) {
          return s.out_size;
        } else {
          return dims(s.out_size);
        }
      },
      spec);
}

}  // namespace

ShapeReport lint_shapes(const ArchGraph& g, const LintOptions& options) {
  ShapeReport report;
  for (const auto& [name, spec] : g.nodes()) {
    report.entries.push_back(check_node(name, spec, options));
    const auto& e = report.entries.back();
    if (e.status == ShapeStatus::Mismatch) {
      report.warnings.findings.push_back({Severity::Warning, "ShapeMismatch", name, e.note});
    }

    // element-wise addition needs operands of one shape
    const auto* mf = std::get_if<MFSpec>(&spec);
    if (mf && mf->op_name == "Addition") {
      const auto& preds = g.predecessors(name);
      for (std::size_t i = 1; i < preds.size(); ++i) {
        const auto first = out_size_of(g.spec(preds.front()));
        const auto other = out_size_of(g.spec(preds[i]));
        if (first != other) {
          report.warnings.findings.push_back(
              {Severity::Warning, "AdditionOperandMismatch", name,
               "operands " + preds.front() + " (" + join_ints(first) + ") and " + preds[i] + " (" +
                   join_ints(other) + ") differ in shape"});
        }
      }
    }
  }
  return report;
}

}  // namespace arctext
