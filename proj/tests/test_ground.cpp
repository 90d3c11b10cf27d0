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

#include "fixtures.hpp"
#include "zxtk/graph.hpp"
#include "zxtk/ground.hpp"
#include "zxtk/machine.hpp"
#include "zxtk/semantics.hpp"

namespace {

using namespace zxtk;
using namespace fixtures;

constexpr double kTol = 1e-12;

GroundToken gtok(const Diagram& d, const std::string& label, Dir dir, int x,
                 int y) {
  return GroundToken{edge(d, label), dir, static_cast<std::uint8_t>(x),
                     static_cast<std::uint8_t>(y)};
}

TEST(GroundRules, TraceOutIsAKroneckerDelta) {
  const Diagram d = parse_dsl("ground");
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const auto r = diffusion_rule(d, gtok(d, "a1", Dir::Down, x, y));
      EXPECT_EQ(r.rule, "trace-out");
      if (x == y) {
        ASSERT_EQ(r.branches.size(), 1u);
        EXPECT_TRUE(r.branches[0].tokens.empty());
        EXPECT_NEAR(std::abs(r.branches[0].coeff - 1.0), 0.0, kTol);
      } else {
        EXPECT_TRUE(r.branches.empty());
      }
    }
}

TEST(GroundRules, HadamardHasFourBranches) {
  const Diagram d = parse_dsl("H");
  const auto r = diffusion_rule(d, gtok(d, "b1", Dir::Up, 1, 0));
  ASSERT_EQ(r.branches.size(), 4u);
  for (const auto& b : r.branches) {
    const auto& t = b.tokens.at(0);
    EXPECT_EQ(t.edge, edge(d, "a1"));
    EXPECT_EQ(t.dir, Dir::Up);
    EXPECT_NEAR(std::abs(b.coeff - 0.5 * (t.x ? -1.0 : 1.0)), 0.0, kTol);
  }
}

TEST(GroundRules, GreenPhaseIsConjugatedOnTheSecondBit) {
  const Diagram d = parse_dsl("Z(1,1,pi/2)");
  const auto r = diffusion_rule(d, gtok(d, "a1", Dir::Down, 1, 0));
  ASSERT_EQ(r.branches.size(), 1u);
  EXPECT_NEAR(std::abs(r.branches[0].coeff - cd(0, 1)), 0.0, kTol);
  const auto s = diffusion_rule(d, gtok(d, "a1", Dir::Down, 0, 1));
  EXPECT_NEAR(std::abs(s.branches[0].coeff - cd(0, -1)), 0.0, kTol);
}

TEST(Cpm, TokenMapDoublesEveryToken) {
  const Diagram d = parse_dsl("Z(1,1) ; ground");
  const auto s = GroundTokenState::single({gtok(d, "a1", Dir::Down, 1, 0)}, 0.5);
  const TokenState t = cpm_map(d, s);
  ASSERT_EQ(t.size(), 1u);
  const auto& [m, c] = *t.terms().begin();
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], (Token{edge(d, "a1"), Dir::Down, 1}));
  EXPECT_EQ(m[1].edge.v, edge(d, "a1").v + d.num_edges());
  EXPECT_EQ(m[1].bit, 0);
  EXPECT_NEAR(std::abs(c - 0.5), 0.0, kTol);
}

TEST(Cpm, DephasingChannel) {
  // Copy then discard one copy: off-diagonal entries of rho vanish.
  const Diagram d = parse_dsl("Z(1,2) ; (id * ground)");
  Matrix want(4, 4);
  want.at(0, 0) = 1.0;
  want.at(3, 3) = 1.0;
  EXPECT_LE(max_abs_diff(interp_cpm(d), want), kTol);
  EXPECT_LE(max_abs_diff(g_extract_superoperator(d, EdgeId{0}), want), kTol);
}

TEST(Cpm, InputRunOnGroundDiagram) {
  const Diagram d = parse_dsl("Z(1,2) ; (id * ground)");
  const auto seed = GroundTokenState::single({gtok(d, "a1", Dir::Down, 1, 1)});
  const auto r = normalize(d, seed);
  EXPECT_EQ(r.state, GroundTokenState::single({gtok(d, "b1", Dir::Down, 1, 1)}));
  const auto off = GroundTokenState::single({gtok(d, "a1", Dir::Down, 0, 1)});
  EXPECT_TRUE(normalize(d, off).state.empty());
}

TEST(Cpm, SuperoperatorMatchesForEverySeedEdge) {
  const Diagram d = parse_dsl("(Z(1,2,pi/4) * H) ; (id * X(2,1,pi/2)) ; (id * ground)");
  const Matrix want = interp_cpm(d);
  for (std::uint32_t e = 0; e < d.num_edges(); ++e)
    EXPECT_LE(max_abs_diff(g_extract_superoperator(d, EdgeId{e}), want), 1e-12)
        << d.label(EdgeId{e});
}

TEST(Cpm, DisconnectedGroundDiagramThroughConnector) {
  const Diagram d = parse_dsl("(Z(1,1,pi/4) ; ground) * H");
  const Diagram c = connect_components(d);
  ASSERT_TRUE(is_connected(c));
  EXPECT_LE(max_abs_diff(g_extract_superoperator(c, EdgeId{0}), interp_cpm(d)),
            1e-12);
}

TEST(Simulation, EachStepReplaysOnTheDouble) {
  const Diagram d = parse_dsl("(Z(1,2,pi/4) * H) ; (id * X(2,1,pi/2)) ; (id * ground)");
  const auto seed = GroundTokenState::single(
      {gtok(d, "a1", Dir::Down, 1, 0), gtok(d, "a2", Dir::Down, 0, 0)});
  for (std::uint64_t s = 1; s <= 5; ++s) {
    RandomScheduler sched(s);
    const auto rep = check_simulation(d, seed, sched);
    EXPECT_TRUE(rep.ok) << "seed " << s << " deviation " << rep.max_deviation;
    EXPECT_GE(rep.trace_out_steps, 1u);
    for (const auto& st : rep.steps)
      if (st.rule == "trace-out") {
        EXPECT_EQ(st.rewrites, 2u);
        EXPECT_EQ(st.pure_steps, 1u);
      }
  }
}

TEST(Simulation, WireSeedOnAGround) {
  const Diagram d = parse_dsl("Z(1,2) ; (H * ground)");
  const auto e = edge(d, "e2");
  const auto seed = GroundTokenState::single(
      {GroundToken{e, Dir::Down, 0, 1}, GroundToken{e, Dir::Up, 0, 1}});
  LeastSiteScheduler sched;
  const auto rep = check_simulation(d, seed, sched);
  EXPECT_TRUE(rep.ok) << rep.max_deviation;
}

}  // namespace
