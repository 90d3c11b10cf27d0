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

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "zxtk/token.hpp"

namespace zxtk {

template <class Tok>
struct Branch {
  cd coeff;
  Monomial<Tok> tokens;
};

/// Right-hand side of one diffusion rule.
template <class Tok>
struct RuleResult {
  std::string_view rule;
  GenId generator;
  std::vector<Branch<Tok>> branches;  // empty means the term dies
};

/// Table of diffusion rules; the token must point into a generator.
RuleResult<Token> diffusion_rule(const Diagram& d, const Token& t);
RuleResult<GroundToken> diffusion_rule(const Diagram& d, const GroundToken& t);

inline bool collision_match(const Token& down, const Token& up) {
  return down.bit == up.bit;
}
inline bool collision_match(const GroundToken& down, const GroundToken& up) {
  return down.x == up.x && down.y == up.y;
}

/// Outcome of exhausting collisions inside one monomial.
template <class Tok>
struct Collided {
  Monomial<Tok> tokens;
  bool killed = false;
  std::size_t collisions = 0;
};

template <class Tok>
Collided<Tok> collide_term(Monomial<Tok> m);

/// Applies every collision in every term; the result is collision-free.
template <class Tok>
State<Tok> collide_all(const State<Tok>& s, std::size_t* collisions = nullptr);

template <class Tok>
bool is_collision_free(const State<Tok>& s);

// ---------------------------------------------------------------------------
// Scheduling

/// A token that can diffuse: the `token`-th token of the `term`-th term in
/// canonical order.
struct Candidate {
  std::size_t term = 0;
  std::size_t token = 0;
  EdgeId edge;
  Dir dir = Dir::Down;
  GenId generator;
  GenKind kind = GenKind::ZSpider;
};

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  /// Index into a nonempty candidate list in canonical order.
  virtual std::size_t choose(const std::vector<Candidate>& cands) = 0;
  virtual std::string name() const = 0;
  /// When true, only the first candidate is ever offered.
  virtual bool first_only() const { return false; }
};

/// Lexicographically least (term, token).
class LeastSiteScheduler : public Scheduler {
 public:
  std::size_t choose(const std::vector<Candidate>&) override { return 0; }
  std::string name() const override { return "least"; }
  bool first_only() const override { return true; }
};

class RandomScheduler : public Scheduler {
 public:
  explicit RandomScheduler(std::uint64_t seed) : seed_(seed), rng_(seed) {}
  std::size_t choose(const std::vector<Candidate>& cands) override;
  std::string name() const override;

 private:
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

/// Follows a fixed list of edges: each step diffuses the first candidate
/// on the next listed edge.
class ScriptedScheduler : public Scheduler {
 public:
  explicit ScriptedScheduler(std::vector<EdgeId> script)
      : script_(std::move(script)) {}
  std::size_t choose(const std::vector<Candidate>& cands) override;
  std::string name() const override { return "script"; }

 private:
  std::vector<EdgeId> script_;
  std::size_t pos_ = 0;
};

/// Moves tokens one generator layer at a time, layers counted from the
/// inputs along edge direction.
class SliceOrderScheduler : public Scheduler {
 public:
  explicit SliceOrderScheduler(const Diagram& d);
  std::size_t choose(const std::vector<Candidate>& cands) override;
  std::string name() const override { return "slice"; }

 private:
  std::vector<std::size_t> layer_;
};

/// Delays branching: any non-H diffusion goes before an H diffusion.
class SparseFirstScheduler : public Scheduler {
 public:
  std::size_t choose(const std::vector<Candidate>& cands) override;
  std::string name() const override { return "sparse"; }
};

/// `least`, `random`, `slice`, `sparse`, or `script:e1,e2,...`.
std::unique_ptr<Scheduler> make_scheduler(std::string_view spec,
                                          const Diagram& d,
                                          std::uint64_t seed = 0);

template <class Tok>
std::vector<Candidate> candidates(const Diagram& d, const State<Tok>& s,
                                  bool first_only = false);

// ---------------------------------------------------------------------------
// Stepping

template <class Tok>
struct StepRecord {
  std::string rule;
  GenId generator;
  Tok consumed;
  Monomial<Tok> site_term;
  cd site_coeff;
  std::vector<Branch<Tok>> produced;
  /// Descendants of the site term after collisions, non-null only.
  std::vector<Monomial<Tok>> survivors;
  /// Whether each survivor merged into a term already present.
  std::vector<bool> merged;
  std::size_t collisions = 0;
};

/// Applies one diffusion to the chosen token, without collisions.
template <class Tok>
State<Tok> diffuse_once(const Diagram& d, const State<Tok>& s,
                        std::size_t term, std::size_t token,
                        StepRecord<Tok>* record = nullptr);

/// One diffusion chosen by `sched`, then every collision in the state.
/// Throws NormalFormReached when nothing can diffuse.
template <class Tok>
StepRecord<Tok> step(const Diagram& d, State<Tok>& s, Scheduler& sched);

template <class Tok>
struct Trace {
  State<Tok> initial;
  std::vector<StepRecord<Tok>> steps;
  std::vector<State<Tok>> states;  // state after each step
};

enum class RunStatus { Normal, FuseTripped };

template <class Tok>
struct RunResult {
  State<Tok> state;
  Trace<Tok> trace;
  RunStatus status = RunStatus::Normal;
  std::size_t steps = 0;
  std::size_t max_terms = 0;
  /// Times a term lineage passed through a generator it had already
  /// crossed; only counted with `track_visits`.
  std::size_t revisits = 0;
};

struct RunOptions {
  /// Skip the well-formed and cycle-balanced checks on the seed.
  bool force = false;
  std::optional<std::size_t> fuse;
  bool record_trace = false;
  bool track_visits = false;
};

/// Step budget: 4 x generators x a bound on the number of term lineages.
std::size_t default_fuse(const Diagram& d, std::size_t initial_terms,
                         bool ground);

/// Steps to a normal form. Without `force`, a seed that is not well formed
/// or not cycle-balanced is refused with NotWellFormed / NotCycleBalanced.
template <class Tok>
RunResult<Tok> normalize(const Diagram& d, const State<Tok>& seed,
                         Scheduler& sched, RunOptions opts = {});

template <class Tok>
RunResult<Tok> normalize(const Diagram& d, const State<Tok>& seed,
                         RunOptions opts = {}) {
  LeastSiteScheduler least;
  return normalize(d, seed, least, opts);
}

}  // namespace zxtk
