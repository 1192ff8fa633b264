// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>

#include "arctext/error.hpp"
#include "arctext/lint.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

namespace arctext {
namespace {

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::IoError;
}

// Copy of `g` with `edit` applied to the spec of `name`.
template <typename Edit>
ArchGraph edited(const ArchGraph& g, const std::string& name, Edit edit) {
  std::vector<std::pair<std::string, NodeSpec>> nodes;
  for (const auto& [n, spec] : g.nodes()) {
    NodeSpec s = spec;
    if (n == name) edit(s);
    nodes.emplace_back(n, s);
  }
  return build_graph(std::move(nodes), g.edges());
}

// Adds 1 to out_size[axis] for nodes with a 3-D output; false otherwise.
bool bump_out_size(NodeSpec& spec, std::size_t axis) {
  if (auto* c = std::get_if<ConvSpec>(&spec)) {
    (axis == 0 ? c->out_size.width : c->out_size.height) += 1;
    return true;
  }
  if (auto* p = std::get_if<PoolSpec>(&spec)) {
    (axis == 0 ? p->out_size.width : p->out_size.height) += 1;
    return true;
  }
  if (auto* m = std::get_if<MFSpec>(&spec); m && m->out_size.size() == 3) {
    m->out_size[axis] += 1;
    return true;
  }
  return false;
}

TEST(Extent, SpotValues) {
  EXPECT_EQ(conv_output_extent(32, 2, 2, 0, 1), 16);
  EXPECT_EQ(conv_output_extent(224, 7, 2, 6, 1), 112);
  EXPECT_EQ(pool_output_extent(31, 2, 2, 1, 1), 16);
  EXPECT_EQ(pool_output_extent(112, 3, 2, 2, 1), 56);
  EXPECT_EQ(pool_output_extent(56, 56, 1, 0, 1), 1);
  EXPECT_EQ(conv_output_extent(32, 3, 1, 4, 2), 32);
}

TEST(Extent, Domain) {
  EXPECT_EQ(error_of([] { conv_output_extent(0, 1, 1, 0, 1); }), ErrorCode::InvalidSpec);
  EXPECT_EQ(error_of([] { conv_output_extent(8, 0, 1, 0, 1); }), ErrorCode::InvalidSpec);
  EXPECT_EQ(error_of([] { conv_output_extent(8, 1, 0, 0, 1); }), ErrorCode::InvalidSpec);
  EXPECT_EQ(error_of([] { conv_output_extent(8, 1, 1, -1, 1); }), ErrorCode::InvalidSpec);
  EXPECT_EQ(error_of([] { conv_output_extent(8, 1, 1, 0, 0); }), ErrorCode::InvalidSpec);
  EXPECT_EQ(error_of([] { conv_output_extent(4, 5, 1, 0, 1); }), ErrorCode::NonPositiveOutput);
  EXPECT_EQ(error_of([] { pool_output_extent(4, 3, 1, 0, 2); }), ErrorCode::NonPositiveOutput);
}

TEST(Extent, Monotonic) {
  for (Int in = 8; in <= 40; ++in) {
    for (Int k = 1; k <= 5; ++k) {
      for (Int s = 1; s <= 3; ++s) {
        for (Int pad = 0; pad <= 4; ++pad) {
          const Int base = conv_output_extent(in, k, s, pad, 1);
          EXPECT_GE(base, 1);
          EXPECT_LE(base, conv_output_extent(in + 1, k, s, pad, 1));
          EXPECT_LE(base, conv_output_extent(in, k, s, pad + 1, 1));
          if (k > 1) EXPECT_GE(conv_output_extent(in, k - 1, s, pad, 1), base);
          if (s > 1) EXPECT_GE(conv_output_extent(in, k, s - 1, pad, 1), base);
        }
      }
    }
  }
}

TEST(LintShapes, FixturesAreClean) {
  for (const auto& g : {testing::resnet4(), testing::googlenet_fragment()}) {
    const auto report = lint_shapes(g);
    EXPECT_TRUE(report.clean());
    EXPECT_EQ(report.mismatch_count(), 0u);
    EXPECT_EQ(report.entries.size(), g.size());
  }
}

TEST(LintShapes, StatusPerKind) {
  const auto report = lint_shapes(testing::googlenet_fragment());
  for (const auto& e : report.entries) {
    const auto& spec = testing::googlenet_fragment().spec(e.node);
    if (std::holds_alternative<FullSpec>(spec)) {
      EXPECT_EQ(e.status, ShapeStatus::Unchecked) << e.node;
    } else if (const auto* m = std::get_if<MFSpec>(&spec); m && m->op_name == "Concatenation") {
      EXPECT_EQ(e.status, ShapeStatus::Unchecked) << e.node;
    } else {
      EXPECT_EQ(e.status, ShapeStatus::Ok) << e.node;
    }
  }
}

TEST(LintShapes, EverySpatialPerturbationIsCaught) {
  for (const auto& g : {testing::resnet4(), testing::googlenet_fragment()}) {
    for (const auto& [name, spec] : g.nodes()) {
      for (std::size_t axis : {0u, 1u}) {
        NodeSpec probe = spec;
        if (!bump_out_size(probe, axis)) continue;
        if (const auto* m = std::get_if<MFSpec>(&spec); m && m->op_name == "Concatenation") continue;
        const auto report = lint_shapes(edited(g, name, [&](NodeSpec& s) { bump_out_size(s, axis); }));
        EXPECT_EQ(report.mismatch_count(), 1u) << name << " axis " << axis;
        EXPECT_FALSE(report.clean());
      }
    }
  }
}

TEST(LintShapes, PoolChannelChangeIsInvalid) {
  const auto g = testing::resnet4();
  EXPECT_EQ(error_of([&] { edited(g, "C", [](NodeSpec& s) { std::get<PoolSpec>(s).out_size.channels = 3; }); }),
            ErrorCode::InvalidSpec);
}

TEST(LintShapes, GroupsMustDivideChannels) {
  const auto g = edited(testing::resnet4(), "D", [](NodeSpec& s) { std::get<ConvSpec>(s).groups = 3; });
  const auto report = lint_shapes(g);
  EXPECT_EQ(report.mismatch_count(), 1u);
}

TEST(LintShapes, WindowThatDoesNotFit) {
  const auto g = edited(testing::resnet4(), "D", [](NodeSpec& s) {
    auto& c = std::get<ConvSpec>(s);
    c.in_size.width = 2;
    c.padding = {};
  });
  const auto report = lint_shapes(g);
  EXPECT_EQ(report.mismatch_count(), 1u);
}

TEST(LintShapes, AllowlistControlsMfChecks) {
  const auto g = edited(testing::resnet4(), "F", [](NodeSpec& s) { std::get<MFSpec>(s).out_size = {28, 28, 64}; });
  EXPECT_EQ(lint_shapes(g).mismatch_count(), 1u);
  LintOptions relaxed;
  relaxed.shape_changing_ops.insert(std::get<MFSpec>(g.spec("F")).op_name);
  EXPECT_EQ(lint_shapes(g, relaxed).mismatch_count(), 0u);
}

TEST(LintShapes, AdditionOperandsMustAgree) {
  // J adds the outputs of C and I
  const auto g = edited(testing::resnet4(), "I", [](NodeSpec& s) { std::get<MFSpec>(s).out_size[0] = 57; });
  const auto report = lint_shapes(g);
  EXPECT_EQ(report.mismatch_count(), 1u);
  const auto& f = report.warnings.findings;
  EXPECT_TRUE(std::any_of(f.begin(), f.end(), [](const Finding& x) { return x.code == "AdditionOperandMismatch"; }));
}

TEST(LintShapes, NeverThrowsOnRandomGraphs) {
  testing::Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto g = testing::random_architecture(rng, 5, 30, 3).build();
    const auto report = lint_shapes(g);
    EXPECT_EQ(report.entries.size(), g.size());
    for (const auto& f : report.warnings.findings) EXPECT_EQ(f.severity, Severity::Warning);
  }
}

}  // namespace
}  // namespace arctext
