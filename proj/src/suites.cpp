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

#include "zxtk/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <thread>

#include "zxtk/error.hpp"
#include "zxtk/ground.hpp"
#include "zxtk/interp.hpp"
#include "zxtk/invariants.hpp"
#include "zxtk/semantics.hpp"

namespace zxtk {

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass:
      return "pass";
    case Outcome::Fail:
      return "fail";
    case Outcome::FuseTripped:
      return "fuse";
    case Outcome::Rejected:
      return "rejected";
  }
  return "?";
}

nlohmann::json Report::to_json() const {
  nlohmann::json jt = nlohmann::json::array();
  for (const auto& t : trials)
    jt.push_back({{"index", t.index},
                  {"seed", t.seed},
                  {"outcome", outcome_name(t.outcome)},
                  {"deviation", t.deviation},
                  {"steps", t.steps},
                  {"detail", t.detail}});
  return {{"suite", suite},       {"passed", passed},
          {"failed", failed},     {"fuse", tripped},
          {"rejected", rejected}, {"max_deviation", max_deviation},
          {"seconds", seconds},   {"ok", ok()},
          {"trials", jt}};
}

std::string Report::to_text() const {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%s: %zu trials, %zu passed, %zu failed, %zu fuse, %zu "
                "rejected, max deviation %.3g, %.2f s\n",
                suite.c_str(), trials.size(), passed, failed, tripped, rejected,
                max_deviation, seconds);
  std::string out = buf;
  for (const auto& t : trials) {
    if (t.outcome == Outcome::Pass) continue;
    std::snprintf(buf, sizeof buf, "  trial %zu seed %llu %s dev %.3g: ",
                  t.index, static_cast<unsigned long long>(t.seed),
                  std::string(outcome_name(t.outcome)).c_str(), t.deviation);
    out += buf + t.detail + "\n";
  }
  return out;
}

namespace {

using TrialFn = std::function<void(const SuiteConfig&, TrialResult&)>;

Report run_trials(std::string name, const SuiteConfig& cfg, const TrialFn& fn) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.suite = std::move(name);
  report.trials.resize(cfg.trials);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.trials; i = next++) {
      TrialResult& t = report.trials[i];
      t.index = i;
      t.seed = trial_seed(cfg.gen.seed, i);
      try {
        fn(cfg, t);
      } catch (const LimitExceeded& e) {
        t.outcome = Outcome::FuseTripped;
        t.detail = e.what();
      } catch (const std::exception& e) {
        t.outcome = Outcome::Fail;
        t.detail = e.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, cfg.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const auto& t : report.trials) {
    switch (t.outcome) {
      case Outcome::Pass:
        ++report.passed;
        break;
      case Outcome::Fail:
        ++report.failed;
        break;
      case Outcome::FuseTripped:
        ++report.tripped;
        break;
      case Outcome::Rejected:
        ++report.rejected;
        break;
    }
    report.max_deviation = std::max(report.max_deviation, t.deviation);
  }
  report.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

void judge(const SuiteConfig& cfg, TrialResult& t, const std::string& what) {
  if (t.outcome == Outcome::Pass && t.deviation > cfg.tolerance) {
    t.outcome = Outcome::Fail;
    t.detail = what + " deviates by more than the tolerance";
  }
}

Diagram pure_diagram(const SuiteConfig& cfg, const TrialResult& t) {
  GenConfig g = cfg.gen;
  g.seed = t.seed;
  g.allow_ground = false;
  g.min_grounds = 0;
  return random_diagram(g);
}

Diagram ground_diagram(const SuiteConfig& cfg, const TrialResult& t) {
  GenConfig g = cfg.gen;
  g.seed = t.seed;
  g.allow_ground = true;
  g.require_connected = true;
  g.max_grounds = std::max<std::size_t>(g.max_grounds, 1);
  g.min_grounds = std::max<std::size_t>(g.min_grounds, 1);
  return random_diagram(g);
}

std::vector<int> random_bits(std::mt19937_64& rng, std::size_t n) {
  std::vector<int> bits(n);
  for (auto& b : bits) b = static_cast<int>(draw_below(rng, 2));
  return bits;
}

std::size_t column_of(const std::vector<int>& bits) {
  std::size_t c = 0;
  for (int b : bits) c = (c << 1) | static_cast<std::size_t>(b);
  return c;
}

/// The normal form a single token on input k must reach, built from the
/// matrix: sum of M[y, x] prod(b v y) prod_{i != k}(a_i ^ x_i), x_k fixed.
TokenState single_token_expectation(const Diagram& d, const Matrix& m,
                                    std::size_t k, int bit) {
  const std::size_t n = d.inputs().size(), mo = d.outputs().size();
  TokenState out;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (static_cast<int>((c >> (n - 1 - k)) & 1) != bit) continue;
      Monomial<Token> mono;
      for (std::size_t j = 0; j < mo; ++j)
        mono.push_back(Token{d.outputs()[j], Dir::Down,
                             static_cast<std::uint8_t>((r >> (mo - 1 - j)) & 1)});
      for (std::size_t i = 0; i < n; ++i)
        if (i != k)
          mono.push_back(Token{d.inputs()[i], Dir::Up,
                               static_cast<std::uint8_t>((c >> (n - 1 - i)) & 1)});
      out.add(std::move(mono), m.at(r, c));
    }
  return out;
}

TokenState wire_seed(const Diagram& d, std::mt19937_64& rng) {
  const EdgeId e{static_cast<std::uint32_t>(draw_below(rng, d.num_edges()))};
  const auto x = static_cast<std::uint8_t>(draw_below(rng, 2));
  return TokenState::single({Token{e, Dir::Down, x}, Token{e, Dir::Up, x}});
}

TokenState basis_seed(const Diagram& d, std::mt19937_64& rng) {
  return input_state(d, random_bits(rng, d.inputs().size()));
}

/// Normalizes under `rc`, checking the recorded trace when asked to.
TokenState traced_run(const Diagram& d, const TokenState& seed, RunConfig rc,
                      const SuiteConfig& cfg, TrialResult& t) {
  rc.options.record_trace = cfg.check_traces;
  rc.options.fuse = cfg.fuse;
  const auto r = run_with(d, seed, rc);
  if (r.status == RunStatus::FuseTripped)
    throw LimitExceeded("fuse tripped under " + rc.scheduler + " after " +
                        std::to_string(r.steps) + " steps");
  t.steps += r.steps;
  if (cfg.check_traces) {
    const auto check = check_trace(d, r.trace);
    if (!check.ok && t.outcome == Outcome::Pass) {
      t.outcome = Outcome::Fail;
      t.detail = "trace invariant: " + check.detail;
    }
  }
  return r.state;
}

void oracle_trial(const SuiteConfig& cfg, TrialResult& t) {
  const Diagram d = pure_diagram(cfg, t);
  std::mt19937_64 rng(splitmix64(t.seed));
  const Matrix m = interp(d);
  const std::size_t n = d.inputs().size();
  if (d.num_edges() == 0 || !is_connected(d)) {
    t.deviation = max_abs_diff(m, extract_matrix_general(d));
    judge(cfg, t, "token semantics");
    return;
  }

  const EdgeId e{static_cast<std::uint32_t>(draw_below(rng, d.num_edges()))};
  TokenState wire;
  for (std::uint8_t x = 0; x < 2; ++x)
    wire.add(traced_run(
        d, TokenState::single({Token{e, Dir::Down, x}, Token{e, Dir::Up, x}}),
        {}, cfg, t));
  t.deviation = max_abs_diff(m, read_matrix(d, wire));

  if (n > 0) {
    const auto bits = random_bits(rng, n);
    const Ket out =
        read_output_ket(d, traced_run(d, input_state(d, bits), {}, cfg, t));
    const std::size_t col = column_of(bits);
    for (std::size_t r = 0; r < m.rows(); ++r)
      t.deviation = std::max(t.deviation, std::abs(out[r] - m.at(r, col)));

    const std::size_t k = draw_below(rng, n);
    const int bit = static_cast<int>(draw_below(rng, 2));
    const TokenState s = traced_run(
        d,
        TokenState::single(
            {Token{d.inputs()[k], Dir::Down, static_cast<std::uint8_t>(bit)}}),
        {}, cfg, t);
    t.deviation = std::max(
        t.deviation, max_deviation(s, single_token_expectation(d, m, k, bit)));
  }
  judge(cfg, t, "token semantics");
}

void ground_oracle_trial(const SuiteConfig& cfg, TrialResult& t) {
  const Diagram d = ground_diagram(cfg, t);
  RunConfig rc;
  rc.options.fuse = cfg.fuse;
  t.deviation =
      max_abs_diff(interp_cpm(d), g_extract_superoperator(d, EdgeId{0}, rc));
  judge(cfg, t, "ground superoperator");
}

void confluence_trial(const SuiteConfig& cfg, TrialResult& t) {
  const Diagram d = pure_diagram(cfg, t);
  if (d.num_edges() == 0) {
    t.outcome = Outcome::Rejected;
    t.detail = "diagram has no edges";
    return;
  }
  std::mt19937_64 rng(splitmix64(t.seed));
  std::vector<TokenState> seeds;
  if (!d.inputs().empty()) seeds.push_back(basis_seed(d, rng));
  seeds.push_back(wire_seed(d, rng));
  const auto names = confluence_schedulers(cfg.schedulers);
  for (const auto& seed : seeds) {
    std::optional<TokenState> reference;
    for (std::size_t i = 0; i < names.size(); ++i) {
      RunConfig rc;
      rc.scheduler = names[i];
      TokenState nf = traced_run(d, seed, rc, cfg, t);
      if (!reference) {
        reference = std::move(nf);
        continue;
      }
      const double dev = max_deviation(*reference, nf);
      if (dev > t.deviation) {
        t.deviation = dev;
        t.detail = names[i] + " disagrees with " + names[0];
      }
    }
  }
  judge(cfg, t, "normal form");
}

void invariants_trial(const SuiteConfig& cfg, TrialResult& t) {
  const Diagram d = pure_diagram(cfg, t);
  if (d.num_edges() == 0) {
    t.outcome = Outcome::Rejected;
    t.detail = "diagram has no edges";
    return;
  }
  std::optional<PathIndex> index;
  try {
    index.emplace(d);
  } catch (const LimitExceeded& e) {
    t.outcome = Outcome::Rejected;
    t.detail = e.what();
    return;
  }
  std::mt19937_64 rng(splitmix64(t.seed));
  std::vector<TokenState> seeds;
  if (!d.inputs().empty()) seeds.push_back(basis_seed(d, rng));
  seeds.push_back(wire_seed(d, rng));

  auto fail = [&](std::string why) {
    t.outcome = Outcome::Fail;
    t.detail = std::move(why);
  };
  for (const auto& seed : seeds) {
    RunOptions opts;
    opts.record_trace = true;
    opts.track_visits = true;
    opts.fuse = cfg.fuse;
    RandomScheduler sched(t.seed);
    const auto r = normalize(d, seed, sched, opts);
    if (r.status == RunStatus::FuseTripped)
      throw LimitExceeded("fuse tripped after " + std::to_string(r.steps));
    t.steps += r.steps;
    const auto ck = check_trace(d, r.trace, &*index);
    if (!ck.ok) return fail(ck.detail);
    for (std::size_t i = 0; i < r.trace.states.size(); ++i)
      if (!is_cycle_balanced(d, r.trace.states[i]))
        return fail("not cycle-balanced after step " + std::to_string(i + 1));
    if (r.revisits != 0)
      return fail(std::to_string(r.revisits) + " generator revisits");
    // Opposite tokens on one edge cancel on every path through it, so the
    // witness only exists for collision-free seeds.
    if (seed.size() == 1 && is_collision_free(seed)) {
      const auto& initial = seed.terms().begin()->first;
      std::vector<Token> targets;
      for (const auto& [m, c] : r.state.terms())
        targets.insert(targets.end(), m.begin(), m.end());
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      for (const auto& tok : targets)
        if (!rewind_witness(d, initial, r.trace, tok))
          return fail("no rewind witness for a token on " + d.label(tok.edge));
    }
  }

  // A lone token sitting on a cycle must be refused.
  const auto cycles = enumerate_cycles(d);
  if (!cycles.empty()) {
    const auto bad = TokenState::single(
        {Token{cycles.front().edges.front(), Dir::Down, 0}});
    bool refused = false;
    try {
      normalize(d, bad);
    } catch (const NotCycleBalanced&) {
      refused = true;
    }
    if (!refused) return fail("unbalanced seed was not refused");
  }
}

void simulation_trial(const SuiteConfig& cfg, TrialResult& t) {
  const Diagram d = ground_diagram(cfg, t);
  std::mt19937_64 rng(splitmix64(t.seed));
  GroundTokenState seed;
  if (!d.inputs().empty()) {
    Monomial<GroundToken> m;
    for (auto e : d.inputs())
      m.push_back(GroundToken{e, Dir::Down,
                              static_cast<std::uint8_t>(draw_below(rng, 2)),
                              static_cast<std::uint8_t>(draw_below(rng, 2))});
    seed = GroundTokenState::single(std::move(m));
  } else {
    const EdgeId e{static_cast<std::uint32_t>(draw_below(rng, d.num_edges()))};
    const auto x = static_cast<std::uint8_t>(draw_below(rng, 2));
    const auto y = static_cast<std::uint8_t>(draw_below(rng, 2));
    seed = GroundTokenState::single(
        {GroundToken{e, Dir::Down, x, y}, GroundToken{e, Dir::Up, x, y}});
  }
  RandomScheduler sched(t.seed);
  RunOptions opts;
  opts.fuse = cfg.fuse;
  const auto rep = check_simulation(d, seed, sched, opts);
  if (rep.status == RunStatus::FuseTripped)
    throw LimitExceeded("ground fuse tripped");
  t.steps = rep.steps.size();
  t.deviation = std::max(rep.max_deviation, rep.commute_deviation);
  if (!rep.ok) {
    t.outcome = Outcome::Fail;
    for (const auto& s : rep.steps)
      if (!s.ok) {
        t.detail = "step " + std::to_string(s.index + 1) + " (" + s.rule +
                   ") needs " + std::to_string(s.pure_steps) +
                   " pure steps, deviation " + std::to_string(s.deviation);
        break;
      }
    if (t.detail.empty()) t.detail = "normal forms do not commute";
  }
  judge(cfg, t, "simulation");
}

}  // namespace

std::vector<std::string> confluence_schedulers(std::size_t count) {
  std::vector<std::string> out = {"least", "sparse", "slice"};
  for (std::size_t i = 1; i <= count; ++i)
    out.push_back("random:" + std::to_string(i));
  return out;
}

Report suite_oracle(const SuiteConfig& cfg) {
  return run_trials("oracle", cfg, oracle_trial);
}
Report suite_ground_oracle(const SuiteConfig& cfg) {
  return run_trials("ground-oracle", cfg, ground_oracle_trial);
}
Report suite_confluence(const SuiteConfig& cfg) {
  return run_trials("confluence", cfg, confluence_trial);
}
Report suite_invariants(const SuiteConfig& cfg) {
  return run_trials("invariants", cfg, invariants_trial);
}
Report suite_simulation(const SuiteConfig& cfg) {
  return run_trials("simulation", cfg, simulation_trial);
}

Report run_suite(std::string_view name, const SuiteConfig& cfg) {
  if (name == "oracle") return suite_oracle(cfg);
  if (name == "ground-oracle") return suite_ground_oracle(cfg);
  if (name == "confluence") return suite_confluence(cfg);
  if (name == "invariants") return suite_invariants(cfg);
  if (name == "simulation") return suite_simulation(cfg);
  throw Error("unknown suite '" + std::string(name) + "'");
}

}  // namespace zxtk
