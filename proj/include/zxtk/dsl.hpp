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
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "zxtk/diagram.hpp"

namespace zxtk {

/**
 * Expression tree of the diagram language:
 *
 *   expr  := term (';' term)*        sequential, top to bottom
 *   term  := atom ('*' atom)*        side by side; binds tighter than ';'
 *   atom  := Z(n,m[,angle]) | X(n,m[,angle]) | H | cup | cap | ground
 *          | id | swap | '(' expr ')'
 *
 * Angles are decimals (radians) or rational multiples of pi such as
 * `pi/4`, `-3pi/2`, `3*pi/4`. `#` starts a comment running to end of line.
 */
struct DslNode {
  enum class Kind { Atom, Seq, Tensor };
  Kind kind = Kind::Atom;
  std::string name;  // atom name
  std::size_t n = 0, m = 0;
  Angle angle;
  std::vector<DslNode> children;
  std::size_t begin = 0, end = 0;  // source span
};

DslNode parse_dsl_tree(std::string_view text);

/// Builds the diagram and labels it: inputs a1..an, outputs b1..bm (a wire
/// running straight through keeps its input name), internal edges e1, e2,
/// ... ordered by the generator they leave, then by port.
Diagram parse_dsl(std::string_view text);

/// Canonical text of an expression: single spaces around operators, no
/// redundant parentheses, zero angles omitted.
std::string format_dsl(const DslNode& node);
std::string canonical_dsl(std::string_view text);

/// The labelling scheme used by parse_dsl, applied to any diagram.
Diagram with_default_labels(const Diagram& d);

}  // namespace zxtk
