// Copyright 2026 The zxtk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "zxtk/angle.hpp"
#include "zxtk/diagram.hpp"
#include "zxtk/dsl.hpp"
#include "zxtk/error.hpp"
#include "zxtk/graph.hpp"
#include "zxtk/interp.hpp"

namespace {

using namespace zxtk;
using fixtures::edge;

std::set<std::string> labels_of(const Diagram& d, const Path& p) {
  std::set<std::string> out;
  for (auto e : p.edges) out.insert(d.label(e));
  return out;
}

TEST(Angle, ParseAndPrint) {
  EXPECT_EQ(Angle::parse("pi/4"), Angle::pi_fraction(1, 4));
  EXPECT_EQ(Angle::parse("3*pi/4"), Angle::pi_fraction(3, 4));
  EXPECT_EQ(Angle::parse("-pi/2").to_string(), "-pi/2");
  EXPECT_EQ(Angle::pi_fraction(2, 4), Angle::pi_fraction(1, 2));
  EXPECT_NEAR(Angle::parse("0.3").value(), 0.3, 1e-15);
  EXPECT_TRUE(Angle::parse("0").is_zero());
  for (const char* s : {"pi", "-3pi/4", "0.25", "1e-3", "7pi/3"}) {
    const Angle a = Angle::parse(s);
    EXPECT_EQ(Angle::parse(a.to_string()), a) << s;
  }
  EXPECT_THROW(Angle::parse("pie"), Error);
}

TEST(Diagram, GeneratorArities) {
  EXPECT_EQ(z_spider(2, 3).inputs().size(), 2u);
  EXPECT_EQ(z_spider(2, 3).outputs().size(), 3u);
  EXPECT_EQ(cup().inputs().size(), 2u);
  EXPECT_EQ(cup().outputs().size(), 0u);
  EXPECT_EQ(cap().outputs().size(), 2u);
  EXPECT_EQ(ground().inputs().size(), 1u);
  EXPECT_EQ(identity_wires(3).num_generators(), 0u);
  EXPECT_EQ(swap_wires().num_edges(), 2u);
}

TEST(Diagram, ComposeChecksArity) {
  EXPECT_THROW(compose(z_spider(1, 2), z_spider(1, 1)), ArityError);
  const Diagram d = compose(z_spider(1, 2), z_spider(2, 1));
  EXPECT_EQ(d.num_edges(), 4u);
  EXPECT_EQ(tensor(hadamard(), identity_wire()).inputs().size(), 2u);
}

TEST(Diagram, RedSpiderIsHadamardConjugated) {
  const Diagram r = red_spider(2, 1, Angle::pi_fraction(1, 2));
  EXPECT_EQ(r.count_kind(GenKind::H), 3u);
  EXPECT_EQ(r.count_kind(GenKind::ZSpider), 1u);
}

TEST(Diagram, ConjugateNegatesAngles) {
  const Diagram d = parse_dsl("Z(1,1,pi/4) ; X(1,1,pi/2)");
  const Diagram c = conjugate(d);
  for (std::size_t g = 0; g < d.num_generators(); ++g)
    EXPECT_EQ(c.generators()[g].angle, d.generators()[g].angle.negated());
}

TEST(Diagram, BendWireMovesSlot) {
  const Diagram d = parse_dsl("Z(1,1,pi/4)");
  const Diagram b = bend_wire(d, Side::Input, 0);
  EXPECT_EQ(b.inputs().size(), 0u);
  EXPECT_EQ(b.outputs().size(), 2u);
  EXPECT_EQ(b.count_kind(GenKind::Cap), 1u);
}

TEST(Dsl, CnotLabels) {
  const Diagram d = fixtures::cnot();
  std::vector<std::string> got;
  for (std::uint32_t e = 0; e < d.num_edges(); ++e)
    got.push_back(d.label(EdgeId{e}));
  std::multiset<std::string> want{"a1", "a2", "b1", "b2", "e1", "e2", "e3", "e4"};
  EXPECT_EQ(std::multiset<std::string>(got.begin(), got.end()), want);
  EXPECT_EQ(d.label(d.inputs()[0]), "a1");
  EXPECT_EQ(d.label(d.outputs()[1]), "b2");
  // e1 leaves the control spider into the target's first Hadamard.
  const Edge& e1 = d.edge(edge(d, "e1"));
  EXPECT_EQ(d.generator(e1.top.gen()).kind, GenKind::ZSpider);
  EXPECT_EQ(d.generator(e1.bottom.gen()).kind, GenKind::H);
}

TEST(Dsl, PassThroughWireKeepsInputName) {
  const Diagram d = parse_dsl("id * Z(1,1)");
  EXPECT_EQ(d.label(d.outputs()[0]), "a1");
  EXPECT_EQ(d.label(d.outputs()[1]), "b2");
}

TEST(Dsl, ArityErrorNamesBothSides) {
  try {
    parse_dsl("Z(1,2,0) ; (id * X(2,1,0))");
    FAIL() << "no error";
  } catch (const ArityError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("2 outputs"), std::string::npos) << what;
    EXPECT_NE(what.find("3 inputs"), std::string::npos) << what;
  }
}

TEST(Dsl, ParseErrorsCarryOffset) {
  EXPECT_THROW(parse_dsl("Z(1,"), ParseError);
  EXPECT_THROW(parse_dsl("Q"), ParseError);
  EXPECT_THROW(parse_dsl("H ;"), ParseError);
  EXPECT_THROW(parse_dsl("Z(1,1) )"), ParseError);
  try {
    parse_dsl("H * Y");
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Dsl, CanonicalFormIsStable) {
  for (const char* s :
       {"(Z(1,2,0) * id) ; (id * X(2,1,0))", "H;H", "Z(0,2) ; (H * id) ; cup",
        "# comment\nswap ; (id * ground)", "X(1,1,3*pi/4)", "Z(2,1,0.3) * cap"}) {
    const std::string c = canonical_dsl(s);
    EXPECT_EQ(canonical_dsl(c), c) << s;
    EXPECT_TRUE(structurally_equal(parse_dsl(c), parse_dsl(s))) << s;
  }
  EXPECT_EQ(canonical_dsl("Z(1,1,0)"), "Z(1,1)");
}

TEST(Graph, CnotIsConnectedAndAcyclic) {
  const Diagram d = fixtures::cnot();
  EXPECT_EQ(count_components(d), 1u);
  EXPECT_TRUE(is_connected(d));
  EXPECT_FALSE(paths_between(d, edge(d, "a1"), edge(d, "b2")).empty());
  // The two spiders meet through e1, H, e2 on one side and nowhere else, so
  // the diagram has no cycle.
  EXPECT_TRUE(enumerate_cycles(d).empty());
}

TEST(Graph, SpiderPairHasTheParallelWiresAsCycle) {
  const Diagram d = fixtures::spider_pair();
  const auto cycles = enumerate_cycles(d);
  ASSERT_EQ(cycles.size(), 1u);
  EXPECT_EQ(labels_of(d, cycles[0]), (std::set<std::string>{"b", "c"}));
  EXPECT_TRUE(is_valid_path(d, cycles[0], true));
}

TEST(Graph, ComponentsOfATensor) {
  const Diagram d = parse_dsl("Z(1,1) * H * Z(0,0)");
  const auto comps = connected_components(d);
  EXPECT_EQ(comps.size(), 3u);
  const Diagram joined = connect_components(d);
  EXPECT_TRUE(is_connected(joined));
  EXPECT_EQ(joined.inputs().size(), d.inputs().size());
  EXPECT_EQ(joined.outputs().size(), d.outputs().size());
}

TEST(Graph, ConnectorKeepsTheInterpretation) {
  for (const char* s : {"Z(1,1,pi/4) * H", "Z(1,1) * H * Z(0,0,pi/4)",
                        "(Z(1,2) ; (H * id)) * cap * X(2,0,pi)"}) {
    const Diagram d = parse_dsl(s);
    EXPECT_LE(max_abs_diff(interp(connect_components(d)), interp(d)), 1e-12) << s;
  }
}

TEST(Graph, DistanceAlongCnot) {
  const Diagram d = fixtures::cnot();
  EXPECT_EQ(distance(d, edge(d, "a1"), edge(d, "a1")), 0u);
  EXPECT_TRUE(distance(d, edge(d, "a1"), edge(d, "b2")).has_value());
}

TEST(Graph, CpmDoublesEdgesAndTurnsGroundsIntoCups) {
  const Diagram d = parse_dsl("Z(1,2,pi/4) ; (id * ground)");
  const Diagram c = cpm_construct(d);
  EXPECT_EQ(c.num_edges(), 2 * d.num_edges());
  EXPECT_EQ(c.count_kind(GenKind::Ground), 0u);
  EXPECT_EQ(c.count_kind(GenKind::Cup), 1u);
  EXPECT_EQ(c.count_kind(GenKind::ZSpider), 2u);
  EXPECT_EQ(c.inputs().size(), 2u);
  EXPECT_EQ(c.outputs().size(), 2u);
  // Interleaved boundary: e, then its bar.
  EXPECT_EQ(c.inputs()[1].v, c.inputs()[0].v + d.num_edges());
}

}  // namespace
