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
#include <functional>
#include <optional>
#include <vector>

#include "zxtk/diagram.hpp"

namespace zxtk {

enum class Dir : std::uint8_t { Down, Up };

inline Dir flip(Dir d) { return d == Dir::Down ? Dir::Up : Dir::Down; }

/**
 * A sequence of pairwise distinct edges where consecutive edges meet at a
 * generator ("junction"). `orient[i]` is Down when edge i is walked from its
 * top end to its bottom end. Junctions are pairwise distinct and neither
 * outer endpoint may be a junction; the two outer endpoints may coincide.
 */
struct Path {
  std::vector<EdgeId> edges;
  std::vector<Dir> orient;

  std::size_t size() const { return edges.size(); }
  friend bool operator==(const Path&, const Path&) = default;
};

/// Closed path: the last edge meets the first one at a further junction.
using Cycle = Path;

struct Component {
  Diagram diagram;
  std::vector<GenId> generators;       // original ids, in local order
  std::vector<EdgeId> edges;           // original ids, in local order
  std::vector<std::size_t> input_slots;   // local input i is original slot
  std::vector<std::size_t> output_slots;  // local output j is original slot
};

/// Maximal connected pieces; a bare wire is its own component. Components
/// are ordered by their smallest generator id, then bare wires by edge id.
std::vector<Component> connected_components(const Diagram& d);
std::size_t count_components(const Diagram& d);
bool is_connected(const Diagram& d);

/// Generator at the far end of `e` when walking in direction `dir`, if any.
std::optional<GenId> head_generator(const Diagram& d, EdgeId e, Dir dir);

struct EnumOptions {
  std::size_t cap = 200000;  // LimitExceeded past this many results
};

/// Calls `visit` on every path starting with `first` walked in `dir`.
/// Returning false from `visit` stops the walk early.
void for_each_path_from(const Diagram& d, EdgeId first, Dir dir,
                        const std::function<bool(const Path&)>& visit);

std::vector<Path> paths_between(const Diagram& d, EdgeId from, EdgeId to,
                                EnumOptions opts = {});

/// Every path up to reversal; single-edge paths are listed once, walked
/// Down.
std::vector<Path> enumerate_paths(const Diagram& d, EnumOptions opts = {});

/// Every simple cycle once, starting at its smallest edge walked Down.
std::vector<Cycle> enumerate_cycles(const Diagram& d, EnumOptions opts = {});

/// Length of the shortest path minus one; nullopt when disconnected.
std::optional<std::size_t> distance(const Diagram& d, EdgeId from, EdgeId to);

/// Checks the path (or, with `closed`, cycle) conditions.
bool is_valid_path(const Diagram& d, const Path& p, bool closed = false);

/// Joins all components into one with the same interpretation. Each
/// component gets a host spider Z(1,2,0) spliced into its first edge (a lone
/// edgeless spider gets an extra leg instead); the spare legs all run
/// through H into one Z(k,k,0) whose legs each end in H then Z(1,0,0).
Diagram connect_components(const Diagram& d);

/**
 * Doubles a diagram: edge e keeps its id in the first copy and gets id
 * e + |E| in the conjugated second copy. Each ground becomes a cup joining
 * the two copies of its wire. Boundary wires are interleaved: e, then ē.
 */
Diagram cpm_construct(const Diagram& d);

/// Label for the second copy of an edge: a macron after the first character.
std::string barred(const std::string& name);

}  // namespace zxtk
