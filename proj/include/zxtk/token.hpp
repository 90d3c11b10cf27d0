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

#include <algorithm>
#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "zxtk/diagram.hpp"
#include "zxtk/graph.hpp"
#include "zxtk/interp.hpp"

namespace zxtk {

/// Terms whose coefficient drops below this are removed.
inline constexpr double kPrune = 1e-12;

/// A particle on an edge: sorted by (edge, dir, bit) with Down before Up.
struct Token {
  EdgeId edge;
  Dir dir = Dir::Down;
  std::uint8_t bit = 0;

  friend auto operator<=>(const Token&, const Token&) = default;
};

/// Two-bit token of the mixed-process machine.
struct GroundToken {
  EdgeId edge;
  Dir dir = Dir::Down;
  std::uint8_t x = 0;
  std::uint8_t y = 0;

  friend auto operator<=>(const GroundToken&, const GroundToken&) = default;
};

template <class Tok>
using Monomial = std::vector<Tok>;

/**
 * A complex polynomial over tokens, kept in canonical form: each monomial
 * is a sorted token multiset, like terms are merged, and near-zero terms are
 * dropped. The empty monomial is the scalar 1.
 */
template <class Tok>
class State {
 public:
  using Terms = std::map<Monomial<Tok>, cd>;

  State() = default;

  static State single(Monomial<Tok> m, cd coeff = 1.0) {
    State s;
    s.add(std::move(m), coeff);
    return s;
  }

  /// Adds `coeff * m`; `m` need not be sorted.
  void add(Monomial<Tok> m, cd coeff) {
    std::sort(m.begin(), m.end());
    auto [it, inserted] = terms_.try_emplace(std::move(m), coeff);
    if (!inserted) it->second += coeff;
    if (std::abs(it->second) < kPrune) terms_.erase(it);
  }

  void add(const State& other, cd scale = 1.0) {
    for (const auto& [m, c] : other.terms_) add(m, c * scale);
  }

  void erase(const Monomial<Tok>& m) { terms_.erase(m); }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Term at position `i` in canonical order.
  typename Terms::const_iterator nth(std::size_t i) const {
    return std::next(terms_.begin(), static_cast<std::ptrdiff_t>(i));
  }

  std::size_t max_tokens() const {
    std::size_t n = 0;
    for (const auto& [m, c] : terms_) n = std::max(n, m.size());
    return n;
  }

  friend bool operator==(const State&, const State&) = default;

 private:
  Terms terms_;
};

using TokenState = State<Token>;
using GroundTokenState = State<GroundToken>;

/// Largest coefficient difference over the union of monomials.
template <class Tok>
double max_deviation(const State<Tok>& a, const State<Tok>& b) {
  double worst = 0.0;
  for (const auto& [m, c] : a.terms()) {
    auto it = b.terms().find(m);
    const cd other = it == b.terms().end() ? cd{} : it->second;
    worst = std::max(worst, std::abs(c - other));
  }
  for (const auto& [m, c] : b.terms())
    if (!a.terms().count(m)) worst = std::max(worst, std::abs(c));
  return worst;
}

template <class Tok>
bool approx_equal(const State<Tok>& a, const State<Tok>& b,
                  double tol = kTolerance) {
  return max_deviation(a, b) <= tol;
}

/// True when the token points at a boundary slot, where no rule applies.
template <class Tok>
bool is_frozen(const Diagram& d, const Tok& t) {
  const Edge& e = d.edge(t.edge);
  return !(t.dir == Dir::Down ? e.bottom : e.top).is_port();
}

template <class Tok>
bool is_normal(const Diagram& d, const State<Tok>& s) {
  for (const auto& [m, c] : s.terms())
    for (const auto& t : m)
      if (!is_frozen(d, t)) return false;
  return true;
}

}  // namespace zxtk
