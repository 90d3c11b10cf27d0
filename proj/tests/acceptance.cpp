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

// Acceptance checks: one line per criterion, PASS or FAIL, with the
// measured numbers next to the pinned tolerance. Exit status is the number
// of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "zxtk/error.hpp"
#include "zxtk/graph.hpp"
#include "zxtk/ground.hpp"
#include "zxtk/invariants.hpp"
#include "zxtk/json_io.hpp"
#include "zxtk/machine.hpp"
#include "zxtk/random.hpp"
#include "zxtk/semantics.hpp"
#include "zxtk/suites.hpp"

namespace {

using namespace zxtk;
using fixtures::edge;
using fixtures::kRt2;

constexpr double kExact = 1e-12;    // fixture coefficients
constexpr double kMatrix = 1e-9;    // matrix and normal-form comparisons
constexpr double kCnotSeconds = 1.0;
constexpr double kOracleSeconds = 120.0;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Verdict {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* name, const std::function<Verdict()>& body) {
  Verdict v;
  const auto t0 = Clock::now();
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  std::printf("[%s] %2d %-22s %s (%.2fs)\n", v.ok ? "PASS" : "FAIL", n, name,
              v.detail.c_str(), since(t0));
  std::fflush(stdout);
  if (!v.ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Traces gathered by criteria 1-3 for the invariant check in 7.
std::vector<std::pair<Diagram, Trace<Token>>> fixture_traces;

RunResult<Token> traced(const Diagram& d, const TokenState& seed,
                        RunOptions o = {}) {
  o.record_trace = true;
  auto r = normalize(d, seed, o);
  fixture_traces.emplace_back(d, r.trace);
  return r;
}

Token tok(const Diagram& d, const char* label, Dir dir, int bit) {
  return Token{edge(d, label), dir, static_cast<std::uint8_t>(bit)};
}

// 1 --------------------------------------------------------------------------

Verdict cnot_fixture() {
  const Diagram d = fixtures::cnot();
  const auto t0 = Clock::now();
  const auto r = traced(d, input_state(d, std::vector<int>{1, 0}));
  const double secs = since(t0);
  if (r.state.size() != 1)
    return {false, std::to_string(r.state.size()) + " terms, want 1"};
  const auto& [m, c] = *r.state.terms().begin();
  const double dev = std::abs(c - kRt2);
  const Monomial<Token> want{tok(d, "b1", Dir::Down, 1), tok(d, "b2", Dir::Down, 1)};
  const bool ok = dev <= kExact && m == want && secs < kCnotSeconds;
  return {ok, "1 term, |c - 1/sqrt2| = " + fmt("%.1e", dev) + " (tol 1e-12), tokens " +
                  (m == want ? "(b1v1)(b2v1)" : "WRONG") + ", " +
                  fmt("%.4f", secs) + "s (limit 1s)"};
}

// 2 --------------------------------------------------------------------------

Verdict spider_pair_fixture() {
  const Diagram d = fixtures::spider_pair();
  RunOptions o;
  o.track_visits = true;
  const auto r = traced(d, TokenState::single({tok(d, "a", Dir::Down, 0)}), o);
  const auto want = TokenState::single({tok(d, "d", Dir::Down, 0)});
  const double dev = max_deviation(r.state, want);
  const bool ok = r.status == RunStatus::Normal && dev <= kExact && r.revisits == 0;
  return {ok, "(a v0) -> (d v0), deviation " + fmt("%.1e", dev) +
                  " (tol 1e-12), " + std::to_string(r.steps) + " steps, " +
                  std::to_string(r.revisits) + " generator revisits"};
}

// 3 --------------------------------------------------------------------------

Verdict arbitrary_wire() {
  const Diagram d = fixtures::cnot();
  TokenState want;
  const int rows[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {1, 0, 1, 1}, {1, 1, 1, 0}};
  for (const auto& r : rows)
    want.add({tok(d, "a1", Dir::Up, r[0]), tok(d, "a2", Dir::Up, r[1]),
              tok(d, "b1", Dir::Down, r[2]), tok(d, "b2", Dir::Down, r[3])},
             kRt2);
  double state_dev = 0.0, matrix_dev = 0.0;
  std::size_t bad_terms = 0;
  for (std::uint32_t e = 0; e < d.num_edges(); ++e) {
    TokenState total;
    for (int x = 0; x < 2; ++x) {
      const auto r = traced(d, TokenState::single({Token{EdgeId{e}, Dir::Down,
                                                         static_cast<std::uint8_t>(x)},
                                                   Token{EdgeId{e}, Dir::Up,
                                                         static_cast<std::uint8_t>(x)}}));
      total.add(r.state);
    }
    if (total.size() != 4) ++bad_terms;
    state_dev = std::max(state_dev, max_deviation(total, want));
    matrix_dev = std::max(matrix_dev, max_abs_diff(read_matrix(d, total),
                                                   fixtures::cnot_matrix()));
    matrix_dev = std::max(matrix_dev, max_abs_diff(extract_matrix(d, EdgeId{e}),
                                                   fixtures::cnot_matrix()));
  }
  const bool ok = bad_terms == 0 && state_dev <= kExact && matrix_dev <= kMatrix;
  return {ok, std::to_string(d.num_edges()) + " seed edges, 4 terms each" +
                  (bad_terms ? " (NOT on " + std::to_string(bad_terms) + ")" : "") +
                  ", state deviation " + fmt("%.1e", state_dev) +
                  ", matrix deviation " + fmt("%.1e", matrix_dev) + " (tol 1e-9)"};
}

// 4 --------------------------------------------------------------------------

SuiteConfig oracle_config() {
  SuiteConfig c;
  c.trials = 500;
  c.jobs = 4;
  c.tolerance = kMatrix;
  c.gen.seed = 20260401;
  c.gen.max_generators = 8;
  c.gen.max_inputs = 3;
  c.gen.max_outputs = 3;
  c.gen.angle_pool = {Angle{}, Angle::pi_fraction(1, 4), Angle::pi_fraction(1, 2),
                      Angle::pi_fraction(1, 1)};
  return c;
}

SuiteConfig confluence_config() {
  SuiteConfig c;
  c.trials = 100;
  c.jobs = 4;
  c.tolerance = kMatrix;
  c.schedulers = 20;
  c.gen.seed = 20260402;
  return c;
}

std::string summary(const Report& r) {
  std::string s = std::to_string(r.passed) + "/" + std::to_string(r.trials.size()) +
                  " passed, " + std::to_string(r.failed) + " failed, " +
                  std::to_string(r.tripped) + " fuse, " +
                  std::to_string(r.rejected) + " rejected, max deviation " +
                  fmt("%.1e", r.max_deviation);
  for (const auto& t : r.trials)
    if (t.outcome == Outcome::Fail || t.outcome == Outcome::FuseTripped) {
      s += "; first failure: trial " + std::to_string(t.index) + " seed " +
           std::to_string(t.seed) + ": " + t.detail;
      break;
    }
  return s;
}

Verdict oracle_equivalence() {
  const Report r = suite_oracle(oracle_config());
  const bool ok = r.ok() && r.rejected == 0 && r.max_deviation <= kMatrix &&
                  r.seconds < kOracleSeconds;
  return {ok, summary(r) + " (tol 1e-9), " + fmt("%.1f", r.seconds) +
                  "s (limit 120s)"};
}

// 5 --------------------------------------------------------------------------

Verdict confluence() {
  const Report r = suite_confluence(confluence_config());
  const bool ok = r.ok() && r.rejected == 0 && r.max_deviation <= kMatrix;
  return {ok, summary(r) + " (tol 1e-9), 20 random schedulers plus least, "
                           "sparse, slice per seed"};
}

// 6 --------------------------------------------------------------------------

Verdict termination_gate() {
  // Hadamard-free diagrams with a cycle. A lone token on a cycle edge has
  // polarity 1 on that cycle.
  GenConfig g;
  g.allow_hadamard = false;
  g.max_generators = 6;
  g.max_spider_arity = 4;
  std::size_t refused = 0, tripped = 0, crafted = 0;
  std::string bad;
  for (std::uint64_t i = 0; crafted < 100 && i < 100000; ++i) {
    g.seed = trial_seed(20260406, i);
    const Diagram d = random_diagram(g);
    const auto cycles = enumerate_cycles(d);
    if (cycles.empty()) continue;
    ++crafted;
    std::mt19937_64 rng(g.seed);
    const auto& c = cycles[draw_below(rng, cycles.size())];
    const EdgeId e = c.edges[draw_below(rng, c.edges.size())];
    const auto seed = TokenState::single(
        {Token{e, Dir::Down, static_cast<std::uint8_t>(draw_below(rng, 2))}});
    try {
      normalize(d, seed);
      if (bad.empty()) bad = "accepted seed " + std::to_string(g.seed);
    } catch (const NotCycleBalanced&) {
      ++refused;
    }
    RunOptions o;
    o.force = true;
    const auto r = normalize(d, seed, o);
    if (r.status == RunStatus::FuseTripped)
      ++tripped;
    else if (bad.empty())
      bad = "normal form under force for seed " + std::to_string(g.seed);
  }
  const bool ok = crafted == 100 && refused == 100 && tripped == 100;
  return {ok, std::to_string(crafted) + " seeds, " + std::to_string(refused) +
                  " refused, " + std::to_string(tripped) +
                  " tripped the default fuse under force" +
                  (bad.empty() ? "" : "; " + bad)};
}

// 7 --------------------------------------------------------------------------

Verdict invariant_preservation() {
  std::size_t states = 0, cycle_checks = 0, bad = 0;
  std::string detail;
  for (const auto& [d, t] : fixture_traces) {
    const auto c = check_trace(d, t);
    states += c.states;
    cycle_checks += c.cycle_checks;
    if (!c.ok) {
      ++bad;
      if (detail.empty()) detail = "; " + c.detail;
    }
  }
  // Criteria 4 and 5 again, same seeds, every run recorded and checked.
  SuiteConfig oc = oracle_config();
  oc.check_traces = true;
  SuiteConfig cc = confluence_config();
  cc.check_traces = true;
  SuiteConfig ic;
  ic.trials = 200;
  ic.jobs = 4;
  ic.gen.seed = 20260407;
  const Report ro = suite_oracle(oc);
  const Report rc = suite_confluence(cc);
  const Report ri = suite_invariants(ic);
  const bool ok = bad == 0 && ro.ok() && rc.ok() && ri.ok();
  return {ok, std::to_string(fixture_traces.size()) + " fixture traces (" +
                  std::to_string(states) + " states, " +
                  std::to_string(cycle_checks) + " cycle checks), " +
                  std::to_string(bad) + " bad; traced oracle " +
                  std::to_string(ro.passed) + "/" + std::to_string(ro.trials.size()) +
                  ", traced confluence " + std::to_string(rc.passed) + "/" +
                  std::to_string(rc.trials.size()) + ", invariants suite " +
                  std::to_string(ri.passed) + "/" + std::to_string(ri.trials.size()) +
                  " (" + std::to_string(ri.rejected) + " rejected)" + detail};
}

// 8 --------------------------------------------------------------------------

SuiteConfig ground_config(std::uint64_t seed) {
  SuiteConfig c;
  c.trials = 200;
  c.jobs = 4;
  c.tolerance = kMatrix;
  c.gen.seed = seed;
  c.gen.allow_ground = true;
  c.gen.max_grounds = 2;
  c.gen.min_grounds = 1;
  c.gen.max_generators = 6;
  return c;
}

Verdict ground_simulation() {
  const Report rs = suite_simulation(ground_config(20260408));
  const Report rg = suite_ground_oracle(ground_config(20260409));

  // Trace-out accounting on 200 more diagrams, wire seeds on a ground's wire
  // so that every run crosses at least one ground.
  GenConfig g = ground_config(20260410).gen;
  std::size_t runs = 0, trace_outs = 0, two_rewrites = 0, one_step = 0, sim_ok = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    g.seed = trial_seed(20260410, i);
    const Diagram d = random_diagram(g);
    EdgeId e{0};
    for (const auto& gen : d.generators())
      if (gen.kind == GenKind::Ground) e = gen.inputs[0];
    std::mt19937_64 rng(g.seed);
    const auto x = static_cast<std::uint8_t>(draw_below(rng, 2));
    const auto y = static_cast<std::uint8_t>(draw_below(rng, 2));
    const auto seed = GroundTokenState::single(
        {GroundToken{e, Dir::Down, x, y}, GroundToken{e, Dir::Up, x, y}});
    RandomScheduler sched(g.seed);
    const auto rep = check_simulation(d, seed, sched);
    ++runs;
    if (rep.ok) ++sim_ok;
    for (const auto& s : rep.steps)
      if (s.rule == "trace-out") {
        ++trace_outs;
        if (s.rewrites == 2) ++two_rewrites;
        if (s.pure_steps == 1) ++one_step;
      }
  }
  const bool ok = rs.ok() && rg.ok() && rg.max_deviation <= kMatrix &&
                  sim_ok == runs && trace_outs > 0 && two_rewrites == trace_outs;
  return {ok, "simulation " + std::to_string(rs.passed) + "/" +
                  std::to_string(rs.trials.size()) + ", superoperator " +
                  std::to_string(rg.passed) + "/" + std::to_string(rg.trials.size()) +
                  " max deviation " + fmt("%.1e", rg.max_deviation) +
                  " (tol 1e-9); wire-seeded runs " + std::to_string(sim_ok) + "/" +
                  std::to_string(runs) + ", " + std::to_string(trace_outs) +
                  " trace-outs, " + std::to_string(two_rewrites) +
                  " matched by 2 pure rewrites (cup diffusion + collision), " +
                  std::to_string(one_step) + " of them forming 1 machine step"};
}

// 9 --------------------------------------------------------------------------

Verdict sparse_spider() {
  std::string sizes;
  bool ok = true;
  for (std::size_t n = 1; n <= 10; ++n) {
    const Diagram d = z_spider(n, n);
    const TokenState s = extract_state(d, EdgeId{0});
    const Matrix dense = interp(d);
    const bool good = s.size() == 2 && s.max_tokens() == 2 * n &&
                      dense.rows() == (std::size_t{1} << n) &&
                      dense.cols() == (std::size_t{1} << n) &&
                      max_abs_diff(read_matrix(d, s), dense) <= kMatrix;
    ok = ok && good;
    if (n == 1 || n == 5 || n == 10 || !good)
      sizes += " n=" + std::to_string(n) + ": " + std::to_string(s.size()) +
               " terms x " + std::to_string(s.max_tokens()) + " tokens vs " +
               std::to_string(dense.rows()) + "x" + std::to_string(dense.cols()) +
               ";";
  }
  return {ok, "Z(n,n), n=1..10, 2 terms each;" + sizes};
}

// 10 -------------------------------------------------------------------------

template <class F>
std::size_t count_round_trips(std::size_t cases, F&& one) {
  std::size_t good = 0;
  for (std::size_t i = 0; i < cases; ++i)
    if (one(i)) ++good;
  return good;
}

Verdict round_trips() {
  constexpr std::size_t kCases = 1000;
  GenConfig g;
  g.max_generators = 6;
  g.allow_ground = true;
  g.max_grounds = 2;

  auto random_diagram_at = [&](std::size_t i, bool ground) {
    GenConfig c = g;
    c.allow_ground = ground;
    c.seed = trial_seed(20260410, i);
    return random_diagram(c);
  };

  const std::size_t diagrams = count_round_trips(kCases, [&](std::size_t i) {
    const Diagram d = random_diagram_at(i, true);
    const std::string a = dump(diagram_to_json(d));
    const Diagram back = diagram_from_json(parse_json(a));
    return back == d && dump(diagram_to_json(back)) == a;
  });

  std::mt19937_64 rng(20260411);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const std::size_t matrices = count_round_trips(kCases, [&](std::size_t i) {
    Matrix m(std::size_t{1} << (i % 3), std::size_t{1} << ((i / 3) % 3));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        m.at(r, c) = cd(unit(rng), (i % 2) ? unit(rng) : 0.0);
    const std::string a = dump(matrix_to_json(m));
    const Matrix back = matrix_from_json(parse_json(a));
    return back == m && dump(matrix_to_json(back)) == a;
  });

  const std::size_t states = count_round_trips(kCases, [&](std::size_t i) {
    const Diagram d = random_diagram_at(i, true);
    const std::size_t terms = 1 + draw_below(rng, 4);
    if (i % 2) {
      GroundTokenState s;
      for (std::size_t t = 0; t < terms; ++t) {
        Monomial<GroundToken> m;
        for (std::size_t k = 0, n = draw_below(rng, 4); k < n; ++k)
          m.push_back(GroundToken{
              EdgeId{static_cast<std::uint32_t>(draw_below(rng, d.num_edges()))},
              draw_below(rng, 2) ? Dir::Up : Dir::Down,
              static_cast<std::uint8_t>(draw_below(rng, 2)),
              static_cast<std::uint8_t>(draw_below(rng, 2))});
        s.add(std::move(m), cd(unit(rng), unit(rng)));
      }
      const std::string a = dump(state_to_json(d, s));
      const auto back = state_from_json<GroundToken>(d, parse_json(a));
      return back == s && dump(state_to_json(d, back)) == a;
    }
    TokenState s;
    for (std::size_t t = 0; t < terms; ++t) {
      Monomial<Token> m;
      for (std::size_t k = 0, n = draw_below(rng, 5); k < n; ++k)
        m.push_back(Token{
            EdgeId{static_cast<std::uint32_t>(draw_below(rng, d.num_edges()))},
            draw_below(rng, 2) ? Dir::Up : Dir::Down,
            static_cast<std::uint8_t>(draw_below(rng, 2))});
      s.add(std::move(m), cd(unit(rng), unit(rng)));
    }
    const std::string a = dump(state_to_json(d, s));
    const auto back = state_from_json<Token>(d, parse_json(a));
    return back == s && dump(state_to_json(d, back)) == a;
  });

  const std::size_t traces = count_round_trips(kCases, [&](std::size_t i) {
    const Diagram d = random_diagram_at(i, false);
    std::mt19937_64 local(trial_seed(20260412, i));
    TokenState seed;
    if (!d.inputs().empty()) {
      std::vector<int> bits(d.inputs().size());
      for (auto& b : bits) b = static_cast<int>(draw_below(local, 2));
      seed = input_state(d, bits);
    } else {
      const EdgeId e{static_cast<std::uint32_t>(draw_below(local, d.num_edges()))};
      seed = TokenState::single({Token{e, Dir::Down, 1}, Token{e, Dir::Up, 1}});
    }
    RunOptions o;
    o.record_trace = true;
    auto sched = make_scheduler("random", d, i);
    const auto r = normalize(d, seed, *sched, o);
    const std::string a = trace_to_jsonl(d, r.trace);
    const auto back = trace_from_jsonl<Token>(d, a);
    return first_bad_digest(a) == -1 && back.states == r.trace.states &&
           trace_to_jsonl(d, back) == a;
  });

  std::mt19937_64 dsl_rng(20260413);
  const std::size_t dsl = count_round_trips(kCases, [&](std::size_t i) {
    const auto e = fixtures::random_dsl(dsl_rng, i % 4, 4);
    const std::string a = canonical_dsl(e.text);
    return canonical_dsl(a) == a &&
           structurally_equal(parse_dsl(a), parse_dsl(e.text));
  });

  const bool ok = diagrams == kCases && matrices == kCases &&
                  states == kCases && traces == kCases && dsl == kCases;
  auto part = [](const char* name, std::size_t n) {
    return std::string(name) + " " + std::to_string(n) + "/1000";
  };
  return {ok, part("diagram", diagrams) + ", " + part("matrix", matrices) + ", " +
                  part("state", states) + ", " + part("trace", traces) + ", " +
                  part("dsl", dsl)};
}

}  // namespace

int main() {
  criterion(1, "cnot-fixture", cnot_fixture);
  criterion(2, "spider-fixture", spider_pair_fixture);
  criterion(3, "arbitrary-wire", arbitrary_wire);
  criterion(4, "oracle-equivalence", oracle_equivalence);
  criterion(5, "confluence", confluence);
  criterion(6, "termination-gate", termination_gate);
  criterion(7, "invariant-preservation", invariant_preservation);
  criterion(8, "ground-simulation", ground_simulation);
  criterion(9, "sparse-spider", sparse_spider);
  criterion(10, "round-trip", round_trips);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
