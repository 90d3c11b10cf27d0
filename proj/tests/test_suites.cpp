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

#include <random>

#include "fixtures.hpp"
#include "zxtk/error.hpp"
#include "zxtk/graph.hpp"
#include "zxtk/random.hpp"
#include "zxtk/suites.hpp"

namespace {

using namespace zxtk;

TEST(Random, SeedsAreReproducible) {
  GenConfig c;
  c.seed = 42;
  EXPECT_EQ(random_diagram(c), random_diagram(c));
  EXPECT_EQ(trial_seed(7, 3), trial_seed(7, 3));
  EXPECT_NE(trial_seed(7, 3), trial_seed(7, 4));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(draw_below(rng, 7), 7u);
}

TEST(Random, DiagramsRespectLimits) {
  GenConfig c = parse_gen_config("gens=8,inputs=3,outputs=3,arity=4,ground=1,grounds=2");
  for (std::uint64_t s = 1; s <= 200; ++s) {
    c.seed = s;
    const Diagram d = random_diagram(c);
    EXPECT_LE(d.num_generators(), 8u);
    EXPECT_LE(d.inputs().size(), 3u);
    EXPECT_LE(d.outputs().size(), 3u);
    EXPECT_LE(d.count_kind(GenKind::Ground), 2u);
    EXPECT_TRUE(is_connected(d));
  }
}

TEST(Random, AcyclicWhenAsked) {
  GenConfig c = parse_gen_config("acyclic=1,gens=7");
  for (std::uint64_t s = 1; s <= 100; ++s) {
    c.seed = s;
    EXPECT_TRUE(enumerate_cycles(random_diagram(c)).empty()) << s;
  }
}

TEST(Random, ConfigParsing) {
  const GenConfig c = parse_gen_config("seed=9,gens=3,hadamard=0,connected=0");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.max_generators, 3u);
  EXPECT_FALSE(c.allow_hadamard);
  EXPECT_FALSE(c.require_connected);
  EXPECT_THROW(parse_gen_config("wat=1"), Error);
}

TEST(Random, DslExpressionsAreWellTyped) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const auto e = fixtures::random_dsl(rng, i % 3, 3);
    const Diagram d = parse_dsl(e.text);
    EXPECT_EQ(d.inputs().size(), static_cast<std::size_t>(i % 3)) << e.text;
    EXPECT_EQ(d.outputs().size(), e.outputs) << e.text;
  }
}

SuiteConfig small(std::size_t trials) {
  SuiteConfig c;
  c.trials = trials;
  c.jobs = 2;
  c.gen.seed = 11;
  return c;
}

TEST(Suites, AllPassOnSmallRuns) {
  for (const char* name : {"oracle", "confluence", "invariants"}) {
    const Report r = run_suite(name, small(40));
    EXPECT_TRUE(r.ok()) << r.to_text();
    EXPECT_EQ(r.passed + r.failed + r.tripped + r.rejected, 40u);
  }
  SuiteConfig g = small(40);
  g.gen.allow_ground = true;
  g.gen.max_grounds = 2;
  for (const char* name : {"ground-oracle", "simulation"}) {
    const Report r = run_suite(name, g);
    EXPECT_TRUE(r.ok()) << r.to_text();
  }
}

TEST(Suites, TraceChecksCanBeSwitchedOn) {
  SuiteConfig c = small(20);
  c.check_traces = true;
  EXPECT_TRUE(suite_oracle(c).ok());
}

TEST(Suites, SameSeedSameReport) {
  const Report a = suite_confluence(small(10));
  const Report b = suite_confluence(small(10));
  ASSERT_EQ(a.trials.size(), b.trials.size());
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    EXPECT_EQ(a.trials[i].seed, b.trials[i].seed);
    EXPECT_EQ(a.trials[i].steps, b.trials[i].steps);
  }
}

TEST(Suites, SchedulerList) {
  const auto s = confluence_schedulers(3);
  EXPECT_EQ(s, (std::vector<std::string>{"least", "sparse", "slice", "random:1",
                                         "random:2", "random:3"}));
  EXPECT_THROW(run_suite("nope", small(1)), Error);
}

TEST(Suites, FuseTripsAreReported) {
  SuiteConfig c = small(10);
  c.fuse = 1;
  const Report r = suite_oracle(c);
  EXPECT_GT(r.tripped, 0u);
  EXPECT_FALSE(r.ok());
}

}  // namespace
