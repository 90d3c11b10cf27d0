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

#include "zxtk/machine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <type_traits>

#include "zxtk/error.hpp"
#include "zxtk/invariants.hpp"

namespace zxtk {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct Entry {
  const Generator* gen;
  GenId id;
  std::uint32_t port;
  bool via_input;  // a Down token enters by an input port
};

template <class Tok>
Entry entry_point(const Diagram& d, const Tok& t) {
  const Edge& e = d.edge(t.edge);
  const EdgeEnd& end = t.dir == Dir::Down ? e.bottom : e.top;
  if (!end.is_port())
    throw NoRuleApplies("token on " + d.label(t.edge) +
                        " points at a boundary");
  return {&d.generator(end.gen()), end.gen(), end.port, t.dir == Dir::Down};
}

/// Tokens a spider emits on every port but the one entered, each built by
/// `make(edge, dir)`.
template <class Tok, class Make>
Monomial<Tok> broadcast(const Entry& at, Make make) {
  Monomial<Tok> out;
  const Generator& g = *at.gen;
  for (std::uint32_t i = 0; i < g.inputs.size(); ++i)
    if (!(at.via_input && i == at.port)) out.push_back(make(g.inputs[i], Dir::Up));
  for (std::uint32_t j = 0; j < g.outputs.size(); ++j)
    if (at.via_input || j != at.port) out.push_back(make(g.outputs[j], Dir::Down));
  return out;
}

/// The far port of a cup (entered Down) or cap (entered Up).
EdgeId other_leg(const Entry& at) {
  const auto& legs = at.via_input ? at.gen->inputs : at.gen->outputs;
  return legs[1 - at.port];
}

}  // namespace

RuleResult<Token> diffusion_rule(const Diagram& d, const Token& t) {
  const Entry at = entry_point(d, t);
  const std::uint8_t x = t.bit;
  RuleResult<Token> r;
  r.generator = at.id;
  switch (at.gen->kind) {
    case GenKind::Cup:
      r.rule = "cup";
      r.branches.push_back({1.0, {Token{other_leg(at), Dir::Up, x}}});
      break;
    case GenKind::Cap:
      r.rule = "cap";
      r.branches.push_back({1.0, {Token{other_leg(at), Dir::Down, x}}});
      break;
    case GenKind::ZSpider: {
      r.rule = "green";
      const cd coeff = x ? std::polar(1.0, at.gen->angle.value()) : cd{1.0};
      r.branches.push_back({coeff, broadcast<Token>(at, [&](EdgeId e, Dir dir) {
                              return Token{e, dir, x};
                            })});
      break;
    }
    case GenKind::H: {
      r.rule = "hadamard";
      const EdgeId out = at.via_input ? at.gen->outputs[0] : at.gen->inputs[0];
      const std::uint8_t nx = static_cast<std::uint8_t>(1 - x);
      r.branches.push_back({x ? -kInvSqrt2 : kInvSqrt2, {Token{out, t.dir, x}}});
      r.branches.push_back({kInvSqrt2, {Token{out, t.dir, nx}}});
      break;
    }
    case GenKind::Ground:
      throw InvalidDiagram("pure token reached a ground on " +
                           d.label(t.edge) + "; use the ground machine");
  }
  return r;
}

RuleResult<GroundToken> diffusion_rule(const Diagram& d,
                                       const GroundToken& t) {
  const Entry at = entry_point(d, t);
  const std::uint8_t x = t.x, y = t.y;
  RuleResult<GroundToken> r;
  r.generator = at.id;
  switch (at.gen->kind) {
    case GenKind::Cup:
      r.rule = "cup";
      r.branches.push_back({1.0, {GroundToken{other_leg(at), Dir::Up, x, y}}});
      break;
    case GenKind::Cap:
      r.rule = "cap";
      r.branches.push_back(
          {1.0, {GroundToken{other_leg(at), Dir::Down, x, y}}});
      break;
    case GenKind::ZSpider: {
      r.rule = "green";
      const cd coeff =
          std::polar(1.0, at.gen->angle.value() * (int(x) - int(y)));
      r.branches.push_back(
          {coeff, broadcast<GroundToken>(at, [&](EdgeId e, Dir dir) {
             return GroundToken{e, dir, x, y};
           })});
      break;
    }
    case GenKind::H: {
      r.rule = "hadamard";
      const EdgeId out = at.via_input ? at.gen->outputs[0] : at.gen->inputs[0];
      for (std::uint8_t z = 0; z < 2; ++z)
        for (std::uint8_t w = 0; w < 2; ++w) {
          const int sign = ((x * z + y * w) % 2) ? -1 : 1;
          r.branches.push_back({0.5 * sign, {GroundToken{out, t.dir, z, w}}});
        }
      break;
    }
    case GenKind::Ground:
      r.rule = "trace-out";
      if (x == y) r.branches.push_back({1.0, {}});
      break;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Collisions

template <class Tok>
Collided<Tok> collide_term(Monomial<Tok> m) {
  Collided<Tok> out;
  std::size_t i = 0;
  while (i < m.size()) {
    std::size_t j = i;
    while (j < m.size() && m[j].edge == m[i].edge) ++j;
    // [i, j) share an edge; Down tokens sort before Up tokens.
    std::size_t split = i;
    while (split < j && m[split].dir == Dir::Down) ++split;
    const std::size_t pairs = std::min(split - i, j - split);
    for (std::size_t k = 0; k < pairs; ++k) {
      ++out.collisions;
      if (!collision_match(m[i + k], m[split + k])) {
        out.killed = true;
        return out;
      }
    }
    for (std::size_t k = i + pairs; k < split; ++k) out.tokens.push_back(m[k]);
    for (std::size_t k = split + pairs; k < j; ++k) out.tokens.push_back(m[k]);
    i = j;
  }
  return out;
}

template <class Tok>
State<Tok> collide_all(const State<Tok>& s, std::size_t* collisions) {
  State<Tok> out;
  for (const auto& [m, c] : s.terms()) {
    auto r = collide_term(m);
    if (collisions) *collisions += r.collisions;
    if (!r.killed) out.add(std::move(r.tokens), c);
  }
  return out;
}

template <class Tok>
bool is_collision_free(const State<Tok>& s) {
  for (const auto& [m, c] : s.terms())
    for (std::size_t i = 0; i + 1 < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size() && m[j].edge == m[i].edge; ++j)
        if (m[i].dir != m[j].dir) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Schedulers

std::size_t RandomScheduler::choose(const std::vector<Candidate>& cands) {
  return static_cast<std::size_t>(rng_() % cands.size());
}

std::string RandomScheduler::name() const {
  return "random:" + std::to_string(seed_);
}

std::size_t ScriptedScheduler::choose(const std::vector<Candidate>& cands) {
  if (pos_ >= script_.size())
    throw Error("scripted scheduler ran out of steps");
  const EdgeId want = script_[pos_++];
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (cands[i].edge == want) return i;
  throw Error("scripted scheduler: no token can move on edge #" +
              std::to_string(want.v));
}

SliceOrderScheduler::SliceOrderScheduler(const Diagram& d)
    : layer_(d.num_generators(), 0) {
  // Longest distance from the inputs along edge direction; generators left
  // on directed cycles go after everything else.
  const std::size_t G = d.num_generators();
  std::vector<std::size_t> indegree(G, 0);
  for (const auto& e : d.edges())
    if (e.top.is_port() && e.bottom.is_port()) ++indegree[e.bottom.index];
  std::deque<std::uint32_t> ready;
  for (std::uint32_t g = 0; g < G; ++g)
    if (indegree[g] == 0) ready.push_back(g);
  std::vector<bool> done(G, false);
  std::size_t deepest = 0;
  while (!ready.empty()) {
    const auto g = ready.front();
    ready.pop_front();
    done[g] = true;
    deepest = std::max(deepest, layer_[g]);
    for (auto e : d.generator(GenId{g}).outputs) {
      const auto& bottom = d.edge(e).bottom;
      if (!bottom.is_port()) continue;
      auto& next = layer_[bottom.index];
      next = std::max(next, layer_[g] + 1);
      if (--indegree[bottom.index] == 0) ready.push_back(bottom.index);
    }
  }
  for (std::uint32_t g = 0; g < G; ++g)
    if (!done[g]) layer_[g] = deepest + 1;
}

std::size_t SliceOrderScheduler::choose(const std::vector<Candidate>& cands) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i)
    if (layer_[cands[i].generator.v] < layer_[cands[best].generator.v])
      best = i;
  return best;
}

std::size_t SparseFirstScheduler::choose(const std::vector<Candidate>& cands) {
  for (std::size_t i = 0; i < cands.size(); ++i)
    if (cands[i].kind != GenKind::H) return i;
  return 0;
}

std::unique_ptr<Scheduler> make_scheduler(std::string_view spec,
                                          const Diagram& d,
                                          std::uint64_t seed) {
  if (spec == "least") return std::make_unique<LeastSiteScheduler>();
  if (spec == "slice") return std::make_unique<SliceOrderScheduler>(d);
  if (spec == "sparse") return std::make_unique<SparseFirstScheduler>();
  if (spec == "random") return std::make_unique<RandomScheduler>(seed);
  if (spec.starts_with("random:")) {
    const std::string num(spec.substr(7));
    try {
      return std::make_unique<RandomScheduler>(std::stoull(num));
    } catch (const std::exception&) {
      throw Error("bad random scheduler seed '" + num + "'");
    }
  }
  if (spec.starts_with("script:")) {
    std::vector<EdgeId> script;
    std::string_view rest = spec.substr(7);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto label = rest.substr(0, comma);
      auto e = d.find_edge(label);
      if (!e) throw Error("scripted scheduler: unknown edge '" +
                          std::string(label) + "'");
      script.push_back(*e);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return std::make_unique<ScriptedScheduler>(std::move(script));
  }
  throw Error("unknown scheduler '" + std::string(spec) + "'");
}

template <class Tok>
std::vector<Candidate> candidates(const Diagram& d, const State<Tok>& s,
                                  bool first_only) {
  std::vector<Candidate> out;
  std::size_t term = 0;
  for (const auto& [m, c] : s.terms()) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      const Tok& t = m[k];
      const Edge& e = d.edge(t.edge);
      const EdgeEnd& end = t.dir == Dir::Down ? e.bottom : e.top;
      if (!end.is_port()) continue;
      out.push_back({term, k, t.edge, t.dir, end.gen(),
                     d.generator(end.gen()).kind});
      if (first_only) return out;
    }
    ++term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Steps

template <class Tok>
State<Tok> diffuse_once(const Diagram& d, const State<Tok>& s,
                        std::size_t term, std::size_t token,
                        StepRecord<Tok>* record) {
  if (term >= s.size()) throw NoRuleApplies("no such term");
  const auto site = s.nth(term);
  const Monomial<Tok>& m = site->first;
  if (token >= m.size()) throw NoRuleApplies("no such token");
  const Tok tok = m[token];
  auto rule = diffusion_rule(d, tok);

  Monomial<Tok> rest = m;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(token));
  State<Tok> next = s;
  next.erase(m);
  for (const auto& b : rule.branches) {
    Monomial<Tok> mono = rest;
    mono.insert(mono.end(), b.tokens.begin(), b.tokens.end());
    next.add(std::move(mono), site->second * b.coeff);
  }
  if (record) {
    record->rule = std::string(rule.rule);
    record->generator = rule.generator;
    record->consumed = tok;
    record->site_term = m;
    record->site_coeff = site->second;
    record->produced = rule.branches;
  }
  return next;
}

template <class Tok>
StepRecord<Tok> step(const Diagram& d, State<Tok>& s, Scheduler& sched) {
  const auto cands = candidates(d, s, sched.first_only());
  if (cands.empty()) throw NormalFormReached();
  const std::size_t k = sched.choose(cands);
  if (k >= cands.size()) throw Error("scheduler chose a missing candidate");

  StepRecord<Tok> rec;
  const State<Tok> diffused =
      diffuse_once(d, s, cands[k].term, cands[k].token, &rec);

  Monomial<Tok> rest = rec.site_term;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(cands[k].token));
  for (const auto& b : rec.produced) {
    Monomial<Tok> mono = rest;
    mono.insert(mono.end(), b.tokens.begin(), b.tokens.end());
    std::sort(mono.begin(), mono.end());
    auto c = collide_term(std::move(mono));
    if (c.killed) continue;
    rec.merged.push_back(c.tokens != rec.site_term &&
                         s.terms().count(c.tokens) > 0);
    rec.survivors.push_back(std::move(c.tokens));
  }
  s = collide_all(diffused, &rec.collisions);
  return rec;
}

std::size_t default_fuse(const Diagram& d, std::size_t initial_terms,
                         bool ground) {
  constexpr double kCeiling = 1e9;
  const double gens = static_cast<double>(std::max<std::size_t>(
      d.num_generators(), 1));
  const double branching =
      std::pow(ground ? 4.0 : 2.0, static_cast<double>(d.count_kind(GenKind::H)));
  const double bound = 4.0 * gens *
                       static_cast<double>(std::max<std::size_t>(initial_terms, 1)) *
                       branching + 16.0;
  return static_cast<std::size_t>(std::min(bound, kCeiling));
}

namespace {

std::string describe_path(const Diagram& d, const Path& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += d.label(p.edges[i]);
    out += p.orient[i] == Dir::Down ? "↓" : "↑";
  }
  return out + ")";
}

void insert_sorted(std::vector<std::uint32_t>& set, std::uint32_t v) {
  auto it = std::lower_bound(set.begin(), set.end(), v);
  if (it == set.end() || *it != v) set.insert(it, v);
}

}  // namespace

template <class Tok>
RunResult<Tok> normalize(const Diagram& d, const State<Tok>& seed,
                         Scheduler& sched, RunOptions opts) {
  constexpr bool kGround = std::is_same_v<Tok, GroundToken>;
  if (!opts.force) {
    auto wf = check_well_formed(d, seed);
    if (!wf.ok)
      throw NotWellFormed("seed has polarity " + std::to_string(wf.polarity) +
                          " on path " + describe_path(d, *wf.path));
    auto cb = check_cycle_balanced(d, seed);
    if (!cb.ok)
      throw NotCycleBalanced("seed has polarity " +
                             std::to_string(cb.polarity) + " on cycle " +
                             describe_path(d, *cb.path));
  }
  const std::size_t fuse =
      opts.fuse.value_or(default_fuse(d, seed.size(), kGround));

  RunResult<Tok> r;
  r.state = seed;
  r.max_terms = seed.size();
  if (opts.record_trace) r.trace.initial = seed;

  // Generators crossed by each term's history; merged terms take the union.
  std::map<Monomial<Tok>, std::vector<std::uint32_t>> visits;

  while (!candidates(d, r.state, true).empty()) {
    if (r.steps >= fuse) {
      r.status = RunStatus::FuseTripped;
      break;
    }
    auto rec = step(d, r.state, sched);
    ++r.steps;
    r.max_terms = std::max(r.max_terms, r.state.size());
    if (opts.track_visits) {
      std::vector<std::uint32_t> seen;
      if (auto it = visits.find(rec.site_term); it != visits.end()) {
        seen = std::move(it->second);
        visits.erase(it);
      }
      if (std::binary_search(seen.begin(), seen.end(), rec.generator.v))
        ++r.revisits;
      insert_sorted(seen, rec.generator.v);
      for (std::size_t i = 0; i < rec.survivors.size(); ++i) {
        auto& slot = visits[rec.survivors[i]];
        if (!rec.merged[i]) slot.clear();
        for (auto g : seen) insert_sorted(slot, g);
      }
    }
    if (opts.record_trace) {
      r.trace.steps.push_back(std::move(rec));
      r.trace.states.push_back(r.state);
    }
  }
  return r;
}

#define ZXTK_INSTANTIATE(Tok)                                                \
  template Collided<Tok> collide_term(Monomial<Tok>);                        \
  template State<Tok> collide_all(const State<Tok>&, std::size_t*);          \
  template bool is_collision_free(const State<Tok>&);                        \
  template std::vector<Candidate> candidates(const Diagram&,                 \
                                             const State<Tok>&, bool);       \
  template State<Tok> diffuse_once(const Diagram&, const State<Tok>&,        \
                                   std::size_t, std::size_t,                 \
                                   StepRecord<Tok>*);                        \
  template StepRecord<Tok> step(const Diagram&, State<Tok>&, Scheduler&);    \
  template RunResult<Tok> normalize(const Diagram&, const State<Tok>&,       \
                                    Scheduler&, RunOptions);

ZXTK_INSTANTIATE(Token)
ZXTK_INSTANTIATE(GroundToken)

#undef ZXTK_INSTANTIATE

}  // namespace zxtk
