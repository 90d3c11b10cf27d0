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

#include <string>

#include "zxtk/diagram.hpp"
#include "zxtk/interp.hpp"
#include "zxtk/token.hpp"

namespace zxtk {

/// `0.707107 (b1↓1)(b2↓1)`; complex coefficients as `(re,im)`.
std::string format_coeff(cd c);

std::string format_token(const Diagram& d, const Token& t);
std::string format_token(const Diagram& d, const GroundToken& t);

/// One term per line in canonical order; `0` for the empty state.
template <class Tok>
std::string format_state(const Diagram& d, const State<Tok>& s);

/// Rows of space-separated entries.
std::string format_matrix(const Matrix& m);

}  // namespace zxtk
