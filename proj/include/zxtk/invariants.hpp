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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zxtk/graph.hpp"
#include "zxtk/machine.hpp"
#include "zxtk/token.hpp"

namespace zxtk {

/// +1 for each token walking with the path, -1 against, 0 off the path.
/// Bits play no part, so this serves both token kinds.
template <class Tok>
int polarity(const Path& p, const Monomial<Tok>& term) {
  int total = 0;
  for (const auto& t : term)
    for (std::size_t i = 0; i < p.edges.size(); ++i)
      if (p.edges[i] == t.edge) total += (t.dir == p.orient[i]) ? 1 : -1;
  return total;
}

/// All paths of a diagram (up to reversal) with an edge-to-path lookup, so
/// one well-formedness check costs tokens x paths-through-edge.
class PathIndex {
 public:
  explicit PathIndex(const Diagram& d, EnumOptions opts = {});

  const std::vector<Path>& paths() const { return paths_; }

  /// Largest |P(p, term)| over all paths, and a path reaching it.
  template <class Tok>
  std::pair<int, std::size_t> worst(const Monomial<Tok>& term) const;

 private:
  struct Hit {
    std::uint32_t path;
    std::int8_t sign;  // +1 if the path walks this edge Down
  };
  std::vector<Path> paths_;
  std::vector<std::vector<Hit>> by_edge_;
  mutable std::vector<int> scratch_;
};

template <class Tok>
struct Witness {
  bool ok = true;
  std::optional<Path> path;  // set when !ok
  Monomial<Tok> term;
  int polarity = 0;
};

template <class Tok>
Witness<Tok> check_well_formed(const Diagram& d, const State<Tok>& s,
                               const PathIndex* index = nullptr);

template <class Tok>
bool is_well_formed(const Diagram& d, const State<Tok>& s) {
  return check_well_formed(d, s).ok;
}

enum class CycleCheck { Fast, Exhaustive };

/// Cycle balance. The fast mode fits edge potentials over a spanning forest;
/// the exhaustive mode enumerates every cycle.
template <class Tok>
Witness<Tok> check_cycle_balanced(const Diagram& d, const State<Tok>& s,
                                  CycleCheck mode = CycleCheck::Fast);

template <class Tok>
bool is_cycle_balanced(const Diagram& d, const State<Tok>& s,
                       CycleCheck mode = CycleCheck::Fast) {
  return check_cycle_balanced(d, s, mode).ok;
}

/**
 * Given a run from the single term `initial` and a token `target` present in
 * the final state, finds a path ending on the target's edge, oriented along
 * the target's direction, with polarity 1 for the initial term. Shortest
 * such path wins.
 */
template <class Tok>
std::optional<Path> rewind_witness(const Diagram& d,
                                   const Monomial<Tok>& initial,
                                   const Trace<Tok>& trace, const Tok& target);

/**
 * Searches step sequences of length at most `depth` from `s` for a state in
 * which some term holds two tokens on one edge in one direction. Returns
 * the candidate indices chosen at each step, or nullopt.
 */
template <class Tok>
std::optional<std::vector<std::size_t>> find_duplicate_run(
    const Diagram& d, const State<Tok>& s, std::size_t depth);

template <class Tok>
bool has_duplicate(const State<Tok>& s);

struct TraceCheck {
  bool ok = true;
  std::size_t states = 0;  // states checked for well-formedness
  std::size_t cycle_checks = 0;
  std::string detail;
};

/**
 * Checks a recorded run: every state is well formed, and along each step
 * the polarity of every cycle is the same on the site term and on each of
 * its non-null descendants.
 */
template <class Tok>
TraceCheck check_trace(const Diagram& d, const Trace<Tok>& trace,
                       const PathIndex* index = nullptr);

}  // namespace zxtk
