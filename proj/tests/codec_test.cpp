// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <map>

#include "arctext/codec.hpp"
#include "arctext/error.hpp"
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

const std::string kDropout = "id:2;name:Dropout;in_size:512;out_size:512;value:0.5;connect_to:Null";
const std::string kChain =
    "id:1;name:ReLU;in_size:8-8-4;out_size:8-8-4;value:Null;connect_to:2\n"
    "id:2;name:BN;in_size:8-8-4;out_size:8-8-4;value:Null;connect_to:Null";

TEST(RenderUnit, Conv) {
  ConvSpec c;
  c.in_size = {32, 32, 3};
  c.out_size = {32, 32, 3};
  EXPECT_EQ(render_unit(c, 1, std::vector<Int>{2}).text(),
            "id:1;in_size:32-32-3;out_size:32-32-3;kernel:1-1;stride:1-1;padding:0-0-0-0-0-0-0-0;dilation:1;groups:1;"
            "bias_used:No;connect_to:2");
}

TEST(RenderUnit, Pool) {
  PoolSpec p;
  p.pool_type = PoolType::Max;
  p.in_size = {112, 112, 64};
  p.out_size = {56, 56, 64};
  p.kernel = {3, 3};
  p.stride = {2, 2};
  p.padding = {1, 1, 1, 1};
  EXPECT_EQ(render_unit(p, 4, std::vector<Int>{5, 10}).text(),
            "id:4;type:Max;in_size:112-112-64;out_size:56-56-64;kernel:3-3;stride:2-2;padding:1-1-1-1;dilation:1;"
            "bias_used:No;connect_to:5-10");
}

TEST(RenderUnit, FullWithAndWithoutActivation) {
  EXPECT_EQ(render_unit(FullSpec{64, 1000, "ReLU"}, 13, std::nullopt).text(),
            "id:13;in_size:64;out_size:1000;act_fun:ReLU;connect_to:Null");
  EXPECT_EQ(render_unit(FullSpec{64, 10, std::nullopt}, 3, std::nullopt).text(),
            "id:3;in_size:64;out_size:10;connect_to:Null");
}

TEST(RenderUnit, MfValues) {
  EXPECT_EQ(render_unit(MFSpec{"Dropout", {512}, {512}, {"0.5"}}, 2, std::nullopt).text(), kDropout);
  EXPECT_EQ(render_unit(MFSpec{"X", {4}, {4}, {"b", "a"}}, 1, std::nullopt).text(),
            "id:1;name:X;in_size:4;out_size:4;value:a-b;connect_to:Null");
}

TEST(RenderUnit, RejectsBadArguments) {
  const MFSpec r{"ReLU", {8}, {8}, {}};
  EXPECT_EQ(error_of([&] { render_unit(r, 0, std::nullopt); }), ErrorCode::InvalidSpec);
  EXPECT_EQ(error_of([&] { render_unit(r, 1, std::vector<Int>{3, 2}); }), ErrorCode::InvalidSpec);
  EXPECT_EQ(error_of([&] { render_unit(r, 1, std::vector<Int>{}); }), ErrorCode::InvalidSpec);
  EXPECT_EQ(error_of([&] { render_unit(MFSpec{"", {8}, {8}, {}}, 1, std::nullopt); }), ErrorCode::InvalidSpec);
}

TEST(RenderDescription, Fixtures) {
  EXPECT_EQ(render_description(testing::resnet4()).text, testing::fixture_text("resnet4.arctext"));
  EXPECT_EQ(render_description(testing::googlenet_fragment()).text,
            testing::fixture_text("googlenet_fragment.arctext"));
}

TEST(RenderDescription, NoTrailingNewline) {
  const auto d = render_description(testing::resnet4());
  EXPECT_NE(d.text.back(), '\n');
  EXPECT_EQ(d.lines.size(), 13u);
  EXPECT_FALSE(d.lines.back().connect_to.has_value());
}

TEST(ClassifyLine, Kinds) {
  EXPECT_EQ(classify_line("id:1;type:Avg;in_size:1-1-1"), UnitKind::Pool);
  EXPECT_EQ(classify_line(kDropout), UnitKind::MF);
  EXPECT_EQ(classify_line("id:1;in_size:1-1-1;out_size:1-1-1;kernel:1-1"), UnitKind::Conv);
  EXPECT_EQ(classify_line("id:1;in_size:64;out_size:10;connect_to:Null"), UnitKind::Full);
  EXPECT_EQ(error_of([] { classify_line("id:1;connect_to:Null"); }), ErrorCode::UnclassifiableLine);
}

TEST(ParseUnit, RoundTripsFixtureLines) {
  const auto text = testing::fixture_text("googlenet_fragment.arctext");
  const auto parsed = parse_description(text);
  for (const auto& line : parsed.description.lines) {
    const auto unit = parse_unit(line.text());
    EXPECT_EQ(unit.line, line);
    EXPECT_EQ(render_unit(unit.spec, line.id, line.connect_to), line);
  }
}

TEST(ParseUnit, Malformed) {
  const std::vector<std::string> bad = {
      "id:1;type:Med;in_size:1-1-1;out_size:1-1-1;kernel:1-1;stride:1-1;padding:0-0-0-0;dilation:1;bias_used:No;"
      "connect_to:Null",
      "id:01;name:ReLU;in_size:8;out_size:8;value:Null;connect_to:Null",
      "id:1;name:ReLU;out_size:8;in_size:8;value:Null;connect_to:Null",
      "id:1;name:ReLU;in_size:8;out_size:8;value:Null;connect_to:3-2",
      "id:1;name:ReLU;in_size:8;out_size:8;value:Null",
      "id:1;name:ReLU;in_size:8;out_size:8;value:Null;connect_to:Null;extra:1",
      "id:1;name:ReLU;in_size:8-8;out_size:8;value:Null;connect_to:Null",
      "id:1;in_size:64;out_size:10;act_fun:;connect_to:Null",
      "id:1;in_size:1-1-1;out_size:1-1-1;kernel:1-1;stride:1-1;padding:0-0-0-0-0-0-0-0;dilation:1;groups:1;"
      "bias_used:Maybe;connect_to:Null",
      "id:1;name:ReLU;in_size:8;out_size:8;value:b-a;connect_to:Null",
  };
  for (const auto& line : bad) {
    EXPECT_EQ(error_of([&] { parse_unit(line); }), ErrorCode::MalformedLine) << line;
  }
}

TEST(ParseDescription, Fixtures) {
  for (const char* name : {"resnet4", "googlenet_fragment"}) {
    const auto text = testing::fixture_text(std::string(name) + ".arctext");
    const auto parsed = parse_description(text);
    EXPECT_EQ(parsed.description.text, text);
    EXPECT_EQ(render_description(parsed.graph, parsed.order).text, text);
    EXPECT_EQ(render_description(parsed.graph).text, text) << name;
  }
}

TEST(ParseDescription, SynthesizedNames) {
  const auto parsed = parse_description(kChain);
  EXPECT_TRUE(parsed.graph.has_edge(synthesized_name(1), synthesized_name(2)));
  EXPECT_EQ(parsed.order.position("n2"), 2);
}

TEST(ParseDescription, TrailingNewline) {
  EXPECT_EQ(parse_description(kChain + "\n").description.text, kChain);
  EXPECT_EQ(error_of([&] { parse_description(kChain + "\n\n"); }), ErrorCode::UnclassifiableLine);
}

TEST(ParseDescription, Errors) {
  const std::string r = ";name:ReLU;in_size:8;out_size:8;value:Null;connect_to:";
  EXPECT_EQ(error_of([] { parse_description(""); }), ErrorCode::EmptyInput);
  EXPECT_EQ(error_of([&] { parse_description("id:1" + r + "3\nid:3" + r + "Null"); }), ErrorCode::NonContiguousIds);
  EXPECT_EQ(error_of([&] { parse_description("id:1" + r + "2\nid:1" + r + "Null"); }), ErrorCode::DuplicateId);
  EXPECT_EQ(error_of([&] { parse_description("id:1" + r + "5\nid:2" + r + "Null"); }), ErrorCode::DanglingConnect);
  EXPECT_EQ(error_of([&] { parse_description("id:1" + r + "Null\nid:2" + r + "Null"); }), ErrorCode::MultipleSinks);
  EXPECT_EQ(error_of([&] { parse_description("id:1" + r + "2\nid:2" + r + "1-3\nid:3" + r + "Null"); }),
            ErrorCode::CycleDetected);
  EXPECT_EQ(error_of([&] { parse_description("id:1" + r + "1\nid:2" + r + "Null"); }), ErrorCode::SelfLoop);
  EXPECT_EQ(error_of([&] { parse_description("id:2" + r + "Null\nid:1" + r + "2"); }), ErrorCode::MalformedLine);
  EXPECT_EQ(error_of([&] { parse_description("id:1" + r + "2\nid:2;connect_to:Null"); }),
            ErrorCode::UnclassifiableLine);
}

TEST(ParseDescription, ErrorsNameTheLine) {
  try {
    parse_description(kChain + "\nid:3;type:Med");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(RoundTrip, RandomArchitectures) {
  testing::Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const auto g = testing::random_architecture(rng, 5, 40, 3).build();
    const auto text = render_description(g).text;
    const auto parsed = parse_description(text);
    EXPECT_EQ(parsed.description.text, text);
    EXPECT_EQ(render_description(parsed.graph).text, text);
    EXPECT_EQ(parsed.graph.size(), g.size());
    EXPECT_EQ(parsed.graph.edges().size(), g.edges().size());
  }
}

TEST(RoundTrip, ParsedGraphIsIsomorphic) {
  testing::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto g = testing::random_architecture(rng, 5, 20, 2).build();
    const auto order = assign_positions(g);
    const auto parsed = parse_description(render_description(g, order).text);
    std::map<std::string, std::string> to_parsed;
    for (const auto& [name, pos] : order.positions) to_parsed[name] = synthesized_name(pos);
    for (const auto& [name, spec] : g.nodes()) EXPECT_EQ(parsed.graph.spec(to_parsed[name]), spec);
    for (const auto& [a, b] : g.edges()) EXPECT_TRUE(parsed.graph.has_edge(to_parsed[a], to_parsed[b]));
  }
}

}  // namespace
}  // namespace arctext
