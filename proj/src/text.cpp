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

#include "zxtk/text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

namespace zxtk {

namespace {

std::string num(double v) {
  if (std::abs(v) < 5e-13) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* arrow(Dir d) { return d == Dir::Down ? "↓" : "↑"; }

}  // namespace

std::string format_coeff(cd c) {
  if (std::abs(c.imag()) < 5e-13) return num(c.real());
  if (std::abs(c.real()) < 5e-13) return num(c.imag()) + "i";
  return "(" + num(c.real()) + (c.imag() < 0 ? "" : "+") + num(c.imag()) +
         "i)";
}

std::string format_token(const Diagram& d, const Token& t) {
  return "(" + d.label(t.edge) + arrow(t.dir) + std::to_string(t.bit) + ")";
}

std::string format_token(const Diagram& d, const GroundToken& t) {
  return "(" + d.label(t.edge) + arrow(t.dir) + std::to_string(t.x) + "," +
         std::to_string(t.y) + ")";
}

template <class Tok>
std::string format_state(const Diagram& d, const State<Tok>& s) {
  if (s.empty()) return "0\n";
  std::string out;
  for (const auto& [m, c] : s.terms()) {
    out += format_coeff(c) + (m.empty() ? " 1" : " ");
    for (const auto& t : m) out += format_token(d, t);
    out += "\n";
  }
  return out;
}

template std::string format_state(const Diagram&, const State<Token>&);
template std::string format_state(const Diagram&, const State<GroundToken>&);

std::string format_matrix(const Matrix& m) {
  std::vector<std::string> cells;
  std::size_t width = 1;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      cells.push_back(format_coeff(m.at(r, c)));
      width = std::max(width, cells.back().size());
    }
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto& cell = cells[r * m.cols() + c];
      if (c) out += "  ";
      out += std::string(width - cell.size(), ' ') + cell;
    }
    out += "\n";
  }
  return out;
}

}  // namespace zxtk
