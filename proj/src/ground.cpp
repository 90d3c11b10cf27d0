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

#include "zxtk/ground.hpp"

#include <algorithm>

#include "zxtk/error.hpp"
#include "zxtk/graph.hpp"

namespace zxtk {

namespace {

Token first_copy(const GroundToken& t) { return Token{t.edge, t.dir, t.x}; }

Token second_copy(const Diagram& d, const GroundToken& t) {
  return Token{EdgeId{t.edge.v + static_cast<std::uint32_t>(d.num_edges())},
               t.dir, t.y};
}

Monomial<Token> cpm_term(const Diagram& d, const Monomial<GroundToken>& m) {
  Monomial<Token> out;
  for (const auto& t : m) {
    out.push_back(first_copy(t));
    out.push_back(second_copy(d, t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Diffuses `tok` in every term that holds it; returns how many moved.
std::size_t diffuse_everywhere(const Diagram& doubled, TokenState& s,
                               const Token& tok) {
  TokenState next;
  std::size_t moved = 0;
  for (const auto& [m, c] : s.terms()) {
    auto it = std::lower_bound(m.begin(), m.end(), tok);
    if (it == m.end() || *it != tok) {
      next.add(m, c);
      continue;
    }
    ++moved;
    const auto rule = diffusion_rule(doubled, tok);
    Monomial<Token> rest = m;
    rest.erase(rest.begin() + (it - m.begin()));
    for (const auto& b : rule.branches) {
      Monomial<Token> mono = rest;
      mono.insert(mono.end(), b.tokens.begin(), b.tokens.end());
      next.add(std::move(mono), c * b.coeff);
    }
  }
  s = std::move(next);
  return moved;
}

}  // namespace

TokenState cpm_map(const Diagram& d, const GroundTokenState& s) {
  TokenState out;
  for (const auto& [m, c] : s.terms()) out.add(cpm_term(d, m), c);
  return out;
}

SimulationReport check_simulation(const Diagram& d, const GroundTokenState& s,
                                  Scheduler& sched, RunOptions opts) {
  const Diagram doubled = cpm_construct(d);
  opts.record_trace = true;
  const auto run = normalize(d, s, sched, opts);

  SimulationReport report;
  report.status = run.status;
  report.final_state = run.state;
  for (std::size_t i = 0; i < run.trace.steps.size(); ++i) {
    const auto& rec = run.trace.steps[i];
    const GroundTokenState& before =
        i == 0 ? run.trace.initial : run.trace.states[i - 1];
    const GroundTokenState& after = run.trace.states[i];

    SimStep st;
    st.index = i;
    st.rule = rec.rule;

    // Replay the site term alone; the other terms are untouched by a step.
    TokenState site;
    std::size_t first = 0, second = 0, collisions = 0;
    if (rec.rule == "trace-out") {
      // The cup turns the first copy round onto its twin's edge, where it
      // meets the twin itself; pairing it with any other token there is a
      // different rewrite.
      const Token tok = first_copy(rec.consumed);
      const Token twin = second_copy(d, rec.consumed);
      const auto rule = diffusion_rule(doubled, tok);
      Monomial<Token> rest = cpm_term(d, rec.site_term);
      rest.erase(std::find(rest.begin(), rest.end(), tok));
      rest.erase(std::find(rest.begin(), rest.end(), twin));
      for (const auto& b : rule.branches)
        if (b.tokens.size() == 1 && b.tokens.front().bit == twin.bit)
          site.add(rest, rec.site_coeff * b.coeff);
      first = 1;
      collisions = 1;
      site = collide_all(site, &collisions);
    } else {
      // Collisions wait until both copies have moved: a wire seed's twin
      // pair would otherwise annihilate before the second copy diffuses.
      site = TokenState::single(cpm_term(d, rec.site_term), rec.site_coeff);
      first = diffuse_everywhere(doubled, site, first_copy(rec.consumed));
      second =
          diffuse_everywhere(doubled, site, second_copy(d, rec.consumed));
      site = collide_all(site, &collisions);
    }
    st.rewrites = first + second + collisions;
    st.pure_steps = (first > 0 ? 1 : 0) + (second > 0 ? 1 : 0);

    TokenState replay = cpm_map(d, before);
    replay.add(cpm_term(d, rec.site_term), -rec.site_coeff);
    replay.add(site);
    st.deviation = max_deviation(replay, cpm_map(d, after));

    st.ok = st.deviation <= kTolerance && st.pure_steps >= 1 &&
            st.pure_steps <= 2;
    if (rec.rule == "trace-out") {
      ++report.trace_out_steps;
      st.ok = st.ok && st.pure_steps == 1 && st.rewrites == 2;
    }
    report.max_deviation = std::max(report.max_deviation, st.deviation);
    report.ok = report.ok && st.ok;
    report.steps.push_back(std::move(st));
  }

  // With collisions applied to whole terms after every step, the pure run
  // from a wire seed's image loses the second pair as soon as the first
  // moves, so normal forms are only compared for collision-free seeds.
  if (run.status == RunStatus::Normal && is_collision_free(s)) {
    RunOptions pure_opts;
    pure_opts.force = opts.force;
    const auto pure = normalize(doubled, cpm_map(d, s), pure_opts);
    report.commute_deviation =
        max_deviation(pure.state, cpm_map(d, run.state));
    report.ok = report.ok && report.commute_deviation <= kTolerance;
  }
  return report;
}

Matrix g_read_matrix(const Diagram& d, const GroundTokenState& s) {
  const std::size_t n = d.inputs().size();
  const std::size_t m = d.outputs().size();
  std::vector<std::int64_t> in(d.num_edges(), -1), out_slot(d.num_edges(), -1);
  for (std::size_t i = 0; i < n; ++i)
    in[d.inputs()[i].v] = static_cast<std::int64_t>(i);
  for (std::size_t j = 0; j < m; ++j)
    out_slot[d.outputs()[j].v] = static_cast<std::int64_t>(j);

  Matrix out(std::size_t{1} << (2 * m), std::size_t{1} << (2 * n));
  for (const auto& [mono, c] : s.terms()) {
    std::vector<int> row(2 * m, -1), col(2 * n, -1);
    for (const auto& t : mono) {
      const bool down = t.dir == Dir::Down;
      const auto j = down ? out_slot[t.edge.v] : in[t.edge.v];
      auto& bits = down ? row : col;
      if (j < 0 || bits[2 * j] >= 0)
        throw Error("ground term is not a boundary configuration");
      bits[2 * j] = t.x;
      bits[2 * j + 1] = t.y;
    }
    std::size_t r = 0, k = 0;
    for (int b : row) {
      if (b < 0) throw Error("ground term misses an output");
      r = (r << 1) | static_cast<std::size_t>(b);
    }
    for (int b : col) {
      if (b < 0) throw Error("ground term misses an input");
      k = (k << 1) | static_cast<std::size_t>(b);
    }
    out.at(r, k) += c;
  }
  return out;
}

GroundTokenState g_extract_state(const Diagram& d, EdgeId seed,
                                 const RunConfig& cfg) {
  if (d.num_edges() == 0)
    throw InvalidDiagram("diagram has no edges; evaluate it with interp_cpm");
  if (seed.v >= d.num_edges()) throw Error("seed edge out of range");
  GroundTokenState total;
  for (std::uint8_t x = 0; x < 2; ++x)
    for (std::uint8_t y = 0; y < 2; ++y) {
      const auto seed_state = GroundTokenState::single(
          {GroundToken{seed, Dir::Down, x, y}, GroundToken{seed, Dir::Up, x, y}});
      auto r = run_with(d, seed_state, cfg);
      if (r.status == RunStatus::FuseTripped)
        throw LimitExceeded("step fuse tripped after " +
                            std::to_string(r.steps) + " steps");
      total.add(r.state);
    }
  return total;
}

Matrix g_extract_superoperator(const Diagram& d, EdgeId seed,
                               const RunConfig& cfg) {
  return g_read_matrix(d, g_extract_state(d, seed, cfg));
}

}  // namespace zxtk
