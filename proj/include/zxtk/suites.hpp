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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "zxtk/random.hpp"

namespace zxtk {

enum class Outcome { Pass, Fail, FuseTripped, Rejected };

std::string_view outcome_name(Outcome o);

struct TrialResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;  // GenConfig seed that replays the trial
  Outcome outcome = Outcome::Pass;
  double deviation = 0.0;
  std::size_t steps = 0;
  std::string detail;
};

struct Report {
  std::string suite;
  std::vector<TrialResult> trials;
  std::size_t passed = 0, failed = 0, tripped = 0, rejected = 0;
  double max_deviation = 0.0;
  double seconds = 0.0;

  bool ok() const { return failed == 0 && tripped == 0; }
  nlohmann::json to_json() const;
  /// One summary line, then one line per trial that did not pass.
  std::string to_text() const;
};

struct SuiteConfig {
  GenConfig gen;
  std::size_t trials = 100;
  unsigned jobs = 1;
  double tolerance = 1e-9;
  /// Seeded random schedulers per seed in the confluence suite, on top of
  /// least, sparse and slice.
  std::size_t schedulers = 20;
  /// Record every run and fail the trial when check_trace does.
  bool check_traces = false;
  /// Step fuse for every run; the size-based default when unset.
  std::optional<std::size_t> fuse;
};

/// Pure diagrams: interp against wire extraction from a random edge,
/// single-token and multi-token input runs.
Report suite_oracle(const SuiteConfig& cfg);

/// Diagrams with grounds: interp_cpm against the ground machine's
/// superoperator.
Report suite_ground_oracle(const SuiteConfig& cfg);

/// Same normal form under every scheduler, from a collision-free input seed
/// and from a single-term wire seed.
Report suite_confluence(const SuiteConfig& cfg);

/// Per step: well-formedness and cycle balance; no lineage revisits a
/// generator; every output token has a rewind witness; unbalanced seeds
/// are refused.
Report suite_invariants(const SuiteConfig& cfg);

/// Ground runs replayed step by step on the doubled diagram.
Report suite_simulation(const SuiteConfig& cfg);

/// `oracle`, `ground-oracle`, `confluence`, `invariants`, `simulation`.
Report run_suite(std::string_view name, const SuiteConfig& cfg);

/// Schedulers used by the confluence suite, in order: least, sparse, slice,
/// random:1 .. random:count.
std::vector<std::string> confluence_schedulers(std::size_t count);

}  // namespace zxtk
