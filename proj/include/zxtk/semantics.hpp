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
#include <optional>
#include <string>
#include <vector>

#include "zxtk/interp.hpp"
#include "zxtk/machine.hpp"

namespace zxtk {

/// (a_1 v x_1) ... (a_n v x_n) for a basis input.
TokenState input_state(const Diagram& d, const std::vector<int>& bits);

/// Sum over basis inputs weighted by the amplitudes of `v`.
TokenState input_state(const Diagram& d, const Ket& v);

/// Parses "10" style bit strings; throws on bad characters or length.
std::vector<int> parse_bits(const std::string& s, std::size_t expected);

struct RunConfig {
  std::string scheduler = "least";
  std::uint64_t seed = 0;
  RunOptions options;
};

/// Normal form of a single token dropped on input `k` (0-based).
TokenState run_single_token(const Diagram& d, std::size_t k, int bit,
                            const RunConfig& cfg = {});

/// Normal form of the input superposition `v`.
TokenState run_multi_token(const Diagram& d, const Ket& v,
                           const RunConfig& cfg = {});

/// Reads a normal form whose terms only hold output tokens as a ket.
Ket read_output_ket(const Diagram& d, const TokenState& s);

/// Reads a normal form whose terms hold one Down token per output and one
/// Up token per input: term prod(b v y) prod(a ^ x) is entry (y, x).
Matrix read_matrix(const Diagram& d, const TokenState& s);

/// t_0 + t_1 where (e v x)(e ^ x) normalizes to t_x. Each seed is
/// normalized on its own.
TokenState extract_state(const Diagram& d, EdgeId seed,
                         const RunConfig& cfg = {});

/// Matrix read from extract_state; `d` must be connected with an edge.
Matrix extract_matrix(const Diagram& d, EdgeId seed,
                      const RunConfig& cfg = {});

/// Works on any diagram: per-component extraction (seeded on each
/// component's first edge), edgeless pieces through interp, then the
/// pieces are assembled with the boundary order restored.
Matrix extract_matrix_general(const Diagram& d, const RunConfig& cfg = {});

/// Runs `normalize` with the scheduler named in `cfg`.
template <class Tok>
RunResult<Tok> run_with(const Diagram& d, const State<Tok>& seed,
                        const RunConfig& cfg) {
  auto sched = make_scheduler(cfg.scheduler, d, cfg.seed);
  return normalize(d, seed, *sched, cfg.options);
}

}  // namespace zxtk
