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
#include <string>
#include <vector>

#include "zxtk/machine.hpp"
#include "zxtk/semantics.hpp"

namespace zxtk {

/// (e, d, x, y) -> (e, d, x)(e-bar, d, y) on cpm_construct(d), term by term.
TokenState cpm_map(const Diagram& d, const GroundTokenState& s);

/// One ground step as replayed on the doubled diagram.
struct SimStep {
  std::size_t index = 0;
  std::string rule;
  /// Pure machine steps: the first-copy token moves, then its twin moves
  /// in every term descending from the site (one step, as a shared factor).
  std::size_t pure_steps = 0;
  /// Individual rule applications, diffusions plus collisions.
  std::size_t rewrites = 0;
  double deviation = 0.0;
  bool ok = true;
};

struct SimulationReport {
  bool ok = true;
  RunStatus status = RunStatus::Normal;
  std::vector<SimStep> steps;
  std::size_t trace_out_steps = 0;
  double max_deviation = 0.0;
  /// |cpm_map(ground normal form) - pure normal form of cpm_map(seed)|,
  /// computed for collision-free seeds only.
  double commute_deviation = 0.0;
  GroundTokenState final_state;
};

/// Runs the ground machine from `s` and checks every step against the pure
/// machine on the doubled diagram: each ground step must be matched by one
/// or two pure steps, a trace-out by one cup diffusion plus one collision.
SimulationReport check_simulation(const Diagram& d, const GroundTokenState& s,
                                  Scheduler& sched, RunOptions opts = {});

/// Doubled-space matrix of a ground normal form: term
/// prod(b v y,y') prod(a ^ x,x') is entry (y1 y1' y2 y2'..., x1 x1' ...).
Matrix g_read_matrix(const Diagram& d, const GroundTokenState& s);

/// Sum over x, y of the normal forms of (e v x,y)(e ^ x,y).
GroundTokenState g_extract_state(const Diagram& d, EdgeId seed,
                                 const RunConfig& cfg = {});

/// Equals interp_cpm(d) for connected d.
Matrix g_extract_superoperator(const Diagram& d, EdgeId seed,
                               const RunConfig& cfg = {});

}  // namespace zxtk
