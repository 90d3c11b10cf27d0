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

#include "zxtk/invariants.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>

#include "zxtk/error.hpp"

namespace zxtk {

PathIndex::PathIndex(const Diagram& d, EnumOptions opts)
    : paths_(enumerate_paths(d, opts)), by_edge_(d.num_edges()) {
  for (std::uint32_t p = 0; p < paths_.size(); ++p)
    for (std::size_t i = 0; i < paths_[p].size(); ++i)
      by_edge_[paths_[p].edges[i].v].push_back(
          {p, static_cast<std::int8_t>(paths_[p].orient[i] == Dir::Down ? 1
                                                                        : -1)});
  scratch_.assign(paths_.size(), 0);
}

template <class Tok>
std::pair<int, std::size_t> PathIndex::worst(const Monomial<Tok>& term) const {
  std::vector<std::uint32_t> touched;
  for (const auto& t : term) {
    const int dir = t.dir == Dir::Down ? 1 : -1;
    for (const auto& hit : by_edge_[t.edge.v]) {
      if (scratch_[hit.path] == 0) touched.push_back(hit.path);
      scratch_[hit.path] += dir * hit.sign;
      // A path can return to zero and be pushed again; harmless.
    }
  }
  int best = 0;
  std::size_t where = 0;
  for (auto p : touched) {
    if (std::abs(scratch_[p]) > best) {
      best = std::abs(scratch_[p]);
      where = p;
    }
  }
  for (auto p : touched) scratch_[p] = 0;
  return {best, where};
}

template <class Tok>
Witness<Tok> check_well_formed(const Diagram& d, const State<Tok>& s,
                               const PathIndex* index) {
  std::optional<PathIndex> own;
  if (!index) {
    own.emplace(d);
    index = &*own;
  }
  Witness<Tok> w;
  for (const auto& [m, c] : s.terms()) {
    auto [worst, where] = index->worst(m);
    if (worst > 1) {
      w.ok = false;
      w.path = index->paths()[where];
      w.term = m;
      w.polarity = polarity(*w.path, m);
      return w;
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Cycle balance

namespace {

/// Spanning forest over generators, using edges with a generator at both
/// ends.
struct Forest {
  std::vector<std::int64_t> parent_edge;  // -1 at roots
  std::vector<std::uint32_t> parent;
  std::vector<std::size_t> depth;
  std::vector<std::uint32_t> order;  // BFS order, parents first
  std::vector<bool> tree_edge;

  explicit Forest(const Diagram& d)
      : parent_edge(d.num_generators(), -1),
        parent(d.num_generators(), 0),
        depth(d.num_generators(), 0),
        tree_edge(d.num_edges(), false) {
    const std::size_t G = d.num_generators();
    std::vector<bool> seen(G, false);
    for (std::uint32_t root = 0; root < G; ++root) {
      if (seen[root]) continue;
      seen[root] = true;
      std::deque<std::uint32_t> queue{root};
      while (!queue.empty()) {
        const auto g = queue.front();
        queue.pop_front();
        order.push_back(g);
        const auto& gen = d.generator(GenId{g});
        std::vector<EdgeId> legs = gen.inputs;
        legs.insert(legs.end(), gen.outputs.begin(), gen.outputs.end());
        for (auto e : legs) {
          const Edge& edge = d.edge(e);
          if (!edge.top.is_port() || !edge.bottom.is_port()) continue;
          const std::uint32_t other =
              edge.top.index == g ? edge.bottom.index : edge.top.index;
          if (seen[other]) continue;
          seen[other] = true;
          tree_edge[e.v] = true;
          parent_edge[other] = e.v;
          parent[other] = g;
          depth[other] = depth[g] + 1;
          queue.push_back(other);
        }
      }
    }
  }
};

/// Tree path from generator u to generator v.
Path tree_path(const Diagram& d, const Forest& f, std::uint32_t u,
               std::uint32_t v) {
  Path up, down;  // up: u towards the meeting point; down: v towards it
  auto climb = [&](std::uint32_t& g, Path& p) {
    const EdgeId e{static_cast<std::uint32_t>(f.parent_edge[g])};
    // Walking from child g to its parent.
    p.edges.push_back(e);
    p.orient.push_back(d.edge(e).bottom.index == g &&
                               d.edge(e).bottom.is_port()
                           ? Dir::Up
                           : Dir::Down);
    g = f.parent[g];
  };
  while (f.depth[u] > f.depth[v]) climb(u, up);
  while (f.depth[v] > f.depth[u]) climb(v, down);
  while (u != v) {
    climb(u, up);
    climb(v, down);
  }
  for (std::size_t i = down.size(); i-- > 0;) {
    up.edges.push_back(down.edges[i]);
    up.orient.push_back(flip(down.orient[i]));
  }
  return up;
}

}  // namespace

template <class Tok>
Witness<Tok> check_cycle_balanced(const Diagram& d, const State<Tok>& s,
                                  CycleCheck mode) {
  Witness<Tok> w;
  if (mode == CycleCheck::Exhaustive) {
    const auto cycles = enumerate_cycles(d);
    for (const auto& [m, c] : s.terms())
      for (const auto& cyc : cycles) {
        const int p = polarity(cyc, m);
        if (p != 0) {
          w.ok = false;
          w.path = cyc;
          w.term = m;
          w.polarity = p;
          return w;
        }
      }
    return w;
  }

  const Forest forest(d);
  std::vector<long> weight(d.num_edges(), 0);
  std::vector<long> phi(d.num_generators(), 0);
  for (const auto& [m, c] : s.terms()) {
    for (const auto& t : m) weight[t.edge.v] += t.dir == Dir::Down ? 1 : -1;
    // Potentials with weight(e) = phi(top) - phi(bottom) on tree edges.
    for (auto g : forest.order) {
      if (forest.parent_edge[g] < 0) {
        phi[g] = 0;
        continue;
      }
      const auto e = static_cast<std::uint32_t>(forest.parent_edge[g]);
      const Edge& edge = d.edge(EdgeId{e});
      phi[g] = edge.bottom.index == g ? phi[forest.parent[g]] - weight[e]
                                      : phi[forest.parent[g]] + weight[e];
    }
    std::optional<EdgeId> bad;
    for (std::uint32_t e = 0; e < d.num_edges() && !bad; ++e) {
      const Edge& edge = d.edge(EdgeId{e});
      if (!edge.top.is_port() || !edge.bottom.is_port() || forest.tree_edge[e])
        continue;
      if (weight[e] != phi[edge.top.index] - phi[edge.bottom.index])
        bad = EdgeId{e};
    }
    for (const auto& t : m) weight[t.edge.v] = 0;
    if (bad) {
      const Edge& edge = d.edge(*bad);
      Path cyc{{*bad}, {Dir::Down}};
      if (edge.top.index != edge.bottom.index) {
        Path back = tree_path(d, forest, edge.bottom.index, edge.top.index);
        cyc.edges.insert(cyc.edges.end(), back.edges.begin(), back.edges.end());
        cyc.orient.insert(cyc.orient.end(), back.orient.begin(),
                          back.orient.end());
      }
      w.ok = false;
      w.path = cyc;
      w.term = m;
      w.polarity = polarity(cyc, m);
      return w;
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Rewinding

template <class Tok>
std::optional<Path> rewind_witness(const Diagram& d,
                                   const Monomial<Tok>& initial,
                                   const Trace<Tok>& trace, const Tok& target) {
  const State<Tok>& last =
      trace.states.empty() ? trace.initial : trace.states.back();
  bool present = false;
  for (const auto& [m, c] : last.terms())
    if (std::binary_search(m.begin(), m.end(), target)) present = true;
  if (!present)
    throw Error("token on " + d.label(target.edge) +
                " is not in the final state of the trace");

  std::optional<Path> best;
  for_each_path_from(d, target.edge, flip(target.dir), [&](const Path& rev) {
    if (best && best->size() <= rev.size()) return true;
    Path p;
    for (std::size_t i = rev.size(); i-- > 0;) {
      p.edges.push_back(rev.edges[i]);
      p.orient.push_back(flip(rev.orient[i]));
    }
    if (polarity(p, initial) == 1) best = std::move(p);
    return true;
  });
  return best;
}

// ---------------------------------------------------------------------------
// Duplicates

template <class Tok>
bool has_duplicate(const State<Tok>& s) {
  for (const auto& [m, c] : s.terms())
    for (std::size_t i = 0; i + 1 < m.size(); ++i)
      if (m[i].edge == m[i + 1].edge && m[i].dir == m[i + 1].dir) return true;
  return false;
}

template <class Tok>
std::optional<std::vector<std::size_t>> find_duplicate_run(
    const Diagram& d, const State<Tok>& s, std::size_t depth) {
  if (has_duplicate(s)) return std::vector<std::size_t>{};
  if (depth == 0) return std::nullopt;
  const auto cands = candidates(d, s);
  for (std::size_t i = 0; i < cands.size(); ++i) {
    State<Tok> next = s;
    struct Pick : Scheduler {
      std::size_t k;
      explicit Pick(std::size_t k) : k(k) {}
      std::size_t choose(const std::vector<Candidate>&) override { return k; }
      std::string name() const override { return "pick"; }
    } pick(i);
    step(d, next, pick);
    if (auto rest = find_duplicate_run(d, next, depth - 1)) {
      rest->insert(rest->begin(), i);
      return rest;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Whole traces

template <class Tok>
TraceCheck check_trace(const Diagram& d, const Trace<Tok>& trace,
                       const PathIndex* index) {
  std::optional<PathIndex> own;
  if (!index) index = &own.emplace(d);
  TraceCheck out;
  auto well_formed = [&](const State<Tok>& s, std::size_t at) {
    ++out.states;
    const auto w = check_well_formed(d, s, index);
    if (!w.ok && out.ok) {
      out.ok = false;
      out.detail = "polarity " + std::to_string(w.polarity) +
                   (at == 0 ? " in the seed"
                            : " after step " + std::to_string(at));
    }
  };
  well_formed(trace.initial, 0);
  for (std::size_t i = 0; i < trace.states.size(); ++i)
    well_formed(trace.states[i], i + 1);

  const auto cycles = enumerate_cycles(d);
  for (std::size_t i = 0; i < trace.steps.size() && out.ok; ++i) {
    const auto& rec = trace.steps[i];
    for (const auto& c : cycles) {
      const int before = polarity(c, rec.site_term);
      for (const auto& m : rec.survivors) {
        ++out.cycle_checks;
        if (polarity(c, m) != before) {
          out.ok = false;
          out.detail = "cycle polarity changed at step " + std::to_string(i + 1);
          break;
        }
      }
      if (!out.ok) break;
    }
  }
  return out;
}

#define ZXTK_INSTANTIATE(Tok)                                                 \
  template std::pair<int, std::size_t> PathIndex::worst(const Monomial<Tok>&) \
      const;                                                                  \
  template Witness<Tok> check_well_formed(const Diagram&, const State<Tok>&,  \
                                          const PathIndex*);                  \
  template Witness<Tok> check_cycle_balanced(const Diagram&,                  \
                                             const State<Tok>&, CycleCheck);  \
  template std::optional<Path> rewind_witness(                                \
      const Diagram&, const Monomial<Tok>&, const Trace<Tok>&, const Tok&);   \
  template bool has_duplicate(const State<Tok>&);                             \
  template std::optional<std::vector<std::size_t>> find_duplicate_run(        \
      const Diagram&, const State<Tok>&, std::size_t);                        \
  template TraceCheck check_trace(const Diagram&, const Trace<Tok>&,          \
                                  const PathIndex*);

ZXTK_INSTANTIATE(Token)
ZXTK_INSTANTIATE(GroundToken)

#undef ZXTK_INSTANTIATE

}  // namespace zxtk
