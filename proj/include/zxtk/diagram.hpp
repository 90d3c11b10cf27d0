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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zxtk/angle.hpp"

namespace zxtk {

/// Dense index of an edge inside its diagram; stable under every operation
/// that does not explicitly renumber.
struct EdgeId {
  std::uint32_t v = 0;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

struct GenId {
  std::uint32_t v = 0;
  friend auto operator<=>(const GenId&, const GenId&) = default;
};

enum class GenKind : std::uint8_t { ZSpider, H, Cup, Cap, Ground };

std::string_view kind_name(GenKind kind);

struct Generator {
  GenKind kind = GenKind::ZSpider;
  Angle angle;
  std::vector<EdgeId> inputs;
  std::vector<EdgeId> outputs;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/**
 * One end of an edge. Every edge runs from a "top" end (a generator output
 * port or a diagram input slot) to a "bottom" end (a generator input port or
 * a diagram output slot). A token travelling "down" heads for the bottom end.
 */
struct EdgeEnd {
  enum class Kind : std::uint8_t { Port, Boundary };
  Kind kind = Kind::Boundary;
  std::uint32_t index = 0;  // generator id for Port, slot for Boundary
  std::uint32_t port = 0;   // port number on the generator

  bool is_port() const { return kind == Kind::Port; }
  GenId gen() const { return GenId{index}; }
  friend bool operator==(const EdgeEnd&, const EdgeEnd&) = default;
};

struct Edge {
  std::string name;  // optional display label
  EdgeEnd top;
  EdgeEnd bottom;
};

enum class Side : std::uint8_t { Input, Output };

/**
 * A labeled open multigraph of generators. Immutable once built; all the
 * operations in this header return new diagrams.
 *
 * Identity wires and swaps are not generators: they are edges running
 * straight from an input slot to an output slot.
 */
class Diagram {
 public:
  Diagram() = default;

  /// Builds and validates. `names` has one entry per edge (may be empty
  /// strings); edge endpoints are recovered from the port lists.
  static Diagram from_parts(
      std::vector<Generator> generators, std::vector<std::string> names,
      std::vector<EdgeId> inputs, std::vector<EdgeId> outputs);

  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<EdgeId>& inputs() const { return inputs_; }
  const std::vector<EdgeId>& outputs() const { return outputs_; }

  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_generators() const { return generators_.size(); }
  const Generator& generator(GenId g) const { return generators_[g.v]; }
  const Edge& edge(EdgeId e) const { return edges_[e.v]; }

  /// Display name when set, otherwise `#<id>`.
  std::string label(EdgeId e) const;
  std::optional<EdgeId> find_edge(std::string_view label) const;

  bool has_ground() const;
  std::size_t count_kind(GenKind kind) const;

  /// Same diagram with every edge renamed; `names.size()` must match.
  Diagram renamed(std::vector<std::string> names) const;

  friend bool operator==(const Diagram& a, const Diagram& b);

 private:
  std::vector<Generator> generators_;
  std::vector<Edge> edges_;
  std::vector<EdgeId> inputs_;
  std::vector<EdgeId> outputs_;
};

Diagram make_generator(GenKind kind, std::size_t n_inputs,
                       std::size_t m_outputs, Angle angle = {});
Diagram z_spider(std::size_t n, std::size_t m, Angle angle = {});
Diagram hadamard();
Diagram cup();
Diagram cap();
Diagram ground();

Diagram identity_wire();
Diagram identity_wires(std::size_t n);
Diagram swap_wires();

/// H^n ; Z(n,m,angle) ; H^m. There is no primitive red node.
Diagram red_spider(std::size_t n, std::size_t m, Angle angle = {});

/// Sequential composition: `top` then `bottom`. The joined wires keep the
/// labels of `top`'s outputs.
Diagram compose(const Diagram& top, const Diagram& bottom);

/// Side-by-side composition; `right`'s edges are renumbered after `left`'s.
Diagram tensor(const Diagram& left, const Diagram& right);

/// Every spider angle negated.
Diagram conjugate(const Diagram& d);

/**
 * Turns boundary slot `index` on `side` into a slot on the other side by
 * attaching a cap (input to output) or a cup (output to input). The new slot
 * is placed at `position`, or appended when unset.
 */
Diagram bend_wire(const Diagram& d, Side side, std::size_t index,
                  std::optional<std::size_t> position = std::nullopt);

/// True when the two diagrams differ only by edge numbering and names:
/// checked by walking from the boundary and generator order.
bool structurally_equal(const Diagram& a, const Diagram& b);

}  // namespace zxtk
