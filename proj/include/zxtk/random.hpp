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
#include <random>
#include <string>
#include <vector>

#include "zxtk/diagram.hpp"

namespace zxtk {

/// Uniform draw in [0, n). Rejection sampling on the raw engine output, so
/// results do not depend on the standard library's distributions.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n);

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for trial `index` of a run seeded with `base`.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index);

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t max_generators = 6;
  std::size_t max_inputs = 2;
  std::size_t max_outputs = 2;
  std::size_t max_spider_arity = 3;
  std::vector<Angle> angle_pool = {
      Angle{},
      Angle::pi_fraction(1, 4),
      Angle::pi_fraction(1, 2),
      Angle::pi_fraction(1, 1),
      Angle::pi_fraction(-1, 2),
      Angle::pi_fraction(3, 4),
      Angle::radians(0.3),
  };
  bool allow_hadamard = true;
  bool allow_cups = true;
  bool allow_ground = false;
  std::size_t max_grounds = 1;
  std::size_t min_grounds = 0;
  bool require_connected = true;
  bool require_acyclic = false;
};

/**
 * A random diagram, labelled like parse_dsl output. Generators are joined by
 * a random spanning tree (skipped at random when connectivity is not
 * required), then, unless acyclic, a few extra internal edges; remaining
 * legs become boundary wires. Spider legs pick a direction only when used.
 * Throws Error if no diagram fits the limits after many attempts.
 */
Diagram random_diagram(const GenConfig& cfg);

/// Parses `key=value,key=value` over the GenConfig fields, for example
/// `gens=8,inputs=3,ground=1,acyclic=1`. Keys: seed, gens, inputs, outputs,
/// arity, hadamard, cups, ground, grounds, min_grounds, connected, acyclic.
GenConfig parse_gen_config(const std::string& text, GenConfig base = {});

}  // namespace zxtk
