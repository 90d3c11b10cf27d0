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
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "zxtk/diagram.hpp"
#include "zxtk/interp.hpp"
#include "zxtk/machine.hpp"
#include "zxtk/token.hpp"

namespace zxtk {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// Diagrams (.zxj). Edges are listed in id order; an unnamed edge is written
// with its `#id` label and read back unnamed.
json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const json& j);

// Dense matrices (.mat.json): {rows, cols, data: [[re, im], ...]} row-major.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

// Token states, edges referred to by label.
json token_to_json(const Diagram& d, const Token& t);
json token_to_json(const Diagram& d, const GroundToken& t);
template <class Tok>
json state_to_json(const Diagram& d, const State<Tok>& s);
template <class Tok>
State<Tok> state_from_json(const Diagram& d, const json& j);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Digest of the compact dump of state_to_json.
template <class Tok>
std::string state_digest(const Diagram& d, const State<Tok>& s);

// Traces (.trace.jsonl): a header line holding the initial state, then one
// line per step with the rule, site, consumed and produced tokens, collision
// count, resulting state and its digest.
template <class Tok>
std::string trace_to_jsonl(const Diagram& d, const Trace<Tok>& t);
template <class Tok>
Trace<Tok> trace_from_jsonl(const Diagram& d, std::string_view text);

/// Ok unless a line's digest disagrees with its state; returns the first
/// bad step index, or -1.
std::int64_t first_bad_digest(std::string_view jsonl);

/// Compact, key-sorted, newline terminated.
std::string dump(const json& j);
json parse_json(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// `.zxd` is the text language, `.zxj` / `.json` the JSON form.
Diagram load_diagram(const std::string& path);

}  // namespace zxtk
