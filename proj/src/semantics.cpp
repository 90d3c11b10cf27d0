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

#include "zxtk/semantics.hpp"

#include "zxtk/error.hpp"
#include "zxtk/graph.hpp"

namespace zxtk {

TokenState input_state(const Diagram& d, const std::vector<int>& bits) {
  if (bits.size() != d.inputs().size())
    throw ArityError("expected " + std::to_string(d.inputs().size()) +
                     " input bits, got " + std::to_string(bits.size()));
  Monomial<Token> m;
  for (std::size_t i = 0; i < bits.size(); ++i)
    m.push_back(Token{d.inputs()[i], Dir::Down,
                      static_cast<std::uint8_t>(bits[i] & 1)});
  return TokenState::single(std::move(m));
}

TokenState input_state(const Diagram& d, const Ket& v) {
  const std::size_t n = d.inputs().size();
  if (v.size() != (std::size_t{1} << n))
    throw ArityError("input vector has " + std::to_string(v.size()) +
                     " entries, expected " +
                     std::to_string(std::size_t{1} << n));
  TokenState s;
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    if (std::abs(v[idx]) < kPrune) continue;
    std::vector<int> bits(n);
    for (std::size_t i = 0; i < n; ++i)
      bits[i] = static_cast<int>((idx >> (n - 1 - i)) & 1);
    s.add(input_state(d, bits), v[idx]);
  }
  return s;
}

std::vector<int> parse_bits(const std::string& s, std::size_t expected) {
  std::vector<int> bits;
  for (char c : s) {
    if (c == '0' || c == '1') {
      bits.push_back(c - '0');
    } else if (c != ' ' && c != '_') {
      throw ParseError(std::string("bad bit '") + c + "'", bits.size());
    }
  }
  if (bits.size() != expected)
    throw ArityError("expected " + std::to_string(expected) + " bits, got " +
                     std::to_string(bits.size()));
  return bits;
}

namespace {

TokenState run_checked(const Diagram& d, const TokenState& seed,
                       const RunConfig& cfg) {
  auto r = run_with(d, seed, cfg);
  if (r.status == RunStatus::FuseTripped)
    throw LimitExceeded("step fuse tripped after " + std::to_string(r.steps) +
                        " steps");
  return r.state;
}

}  // namespace

TokenState run_single_token(const Diagram& d, std::size_t k, int bit,
                            const RunConfig& cfg) {
  if (k >= d.inputs().size())
    throw ArityError("no input " + std::to_string(k));
  return run_checked(
      d,
      TokenState::single(
          {Token{d.inputs()[k], Dir::Down, static_cast<std::uint8_t>(bit & 1)}}),
      cfg);
}

TokenState run_multi_token(const Diagram& d, const Ket& v,
                           const RunConfig& cfg) {
  return run_checked(d, input_state(d, v), cfg);
}

namespace {

/// Slot positions of each edge on the input and output side.
struct Slots {
  std::vector<std::int64_t> in, out;
  explicit Slots(const Diagram& d)
      : in(d.num_edges(), -1), out(d.num_edges(), -1) {
    for (std::size_t i = 0; i < d.inputs().size(); ++i)
      in[d.inputs()[i].v] = static_cast<std::int64_t>(i);
    for (std::size_t j = 0; j < d.outputs().size(); ++j)
      out[d.outputs()[j].v] = static_cast<std::int64_t>(j);
  }
};

std::string describe(const Diagram& d, const Monomial<Token>& m) {
  std::string out;
  for (const auto& t : m)
    out += "(" + d.label(t.edge) + (t.dir == Dir::Down ? "↓" : "↑") +
           std::to_string(t.bit) + ")";
  return out.empty() ? "1" : out;
}

}  // namespace

Ket read_output_ket(const Diagram& d, const TokenState& s) {
  const Slots slots(d);
  const std::size_t m = d.outputs().size();
  Ket out(std::size_t{1} << m);
  for (const auto& [mono, c] : s.terms()) {
    std::vector<int> bit(m, -1);
    for (const auto& t : mono) {
      const auto j = slots.out[t.edge.v];
      if (t.dir != Dir::Down || j < 0 || bit[j] >= 0)
        throw Error("term " + describe(d, mono) + " is not an output state");
      bit[j] = t.bit;
    }
    std::size_t idx = 0;
    for (int b : bit) {
      if (b < 0)
        throw Error("term " + describe(d, mono) + " misses an output");
      idx = (idx << 1) | static_cast<std::size_t>(b);
    }
    out[idx] += c;
  }
  return out;
}

Matrix read_matrix(const Diagram& d, const TokenState& s) {
  const Slots slots(d);
  const std::size_t n = d.inputs().size();
  const std::size_t m = d.outputs().size();
  Matrix out(std::size_t{1} << m, std::size_t{1} << n);
  for (const auto& [mono, c] : s.terms()) {
    std::vector<int> row(m, -1), col(n, -1);
    for (const auto& t : mono) {
      const auto j = t.dir == Dir::Down ? slots.out[t.edge.v]
                                        : slots.in[t.edge.v];
      auto& bits = t.dir == Dir::Down ? row : col;
      if (j < 0 || bits[j] >= 0)
        throw Error("term " + describe(d, mono) +
                    " is not a boundary configuration");
      bits[j] = t.bit;
    }
    std::size_t r = 0, k = 0;
    for (int b : row) {
      if (b < 0) throw Error("term " + describe(d, mono) + " misses an output");
      r = (r << 1) | static_cast<std::size_t>(b);
    }
    for (int b : col) {
      if (b < 0) throw Error("term " + describe(d, mono) + " misses an input");
      k = (k << 1) | static_cast<std::size_t>(b);
    }
    out.at(r, k) += c;
  }
  return out;
}

TokenState extract_state(const Diagram& d, EdgeId seed, const RunConfig& cfg) {
  if (d.num_edges() == 0)
    throw InvalidDiagram("diagram has no edges; evaluate it with interp");
  if (seed.v >= d.num_edges()) throw Error("seed edge out of range");
  TokenState total;
  for (std::uint8_t x = 0; x < 2; ++x) {
    const auto seed_state = TokenState::single(
        {Token{seed, Dir::Down, x}, Token{seed, Dir::Up, x}});
    total.add(run_checked(d, seed_state, cfg));
  }
  return total;
}

Matrix extract_matrix(const Diagram& d, EdgeId seed, const RunConfig& cfg) {
  return read_matrix(d, extract_state(d, seed, cfg));
}

Matrix extract_matrix_general(const Diagram& d, const RunConfig& cfg) {
  const auto comps = connected_components(d);
  const std::size_t n = d.inputs().size();
  const std::size_t m = d.outputs().size();
  std::vector<Matrix> parts;
  for (const auto& c : comps) {
    parts.push_back(c.diagram.num_edges() == 0
                        ? interp(c.diagram)
                        : extract_matrix(c.diagram, EdgeId{0}, cfg));
  }
  Matrix out(std::size_t{1} << m, std::size_t{1} << n);
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t k = 0; k < out.cols(); ++k) {
      cd value = 1.0;
      for (std::size_t ci = 0; ci < comps.size() && value != cd{}; ++ci) {
        const auto& c = comps[ci];
        std::size_t lr = 0, lk = 0;
        for (auto j : c.output_slots) lr = (lr << 1) | ((r >> (m - 1 - j)) & 1);
        for (auto i : c.input_slots) lk = (lk << 1) | ((k >> (n - 1 - i)) & 1);
        value *= parts[ci].at(lr, lk);
      }
      out.at(r, k) = value;
    }
  return out;
}

}  // namespace zxtk
