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

// Shared fixtures and independent dense oracles. Nothing here calls interp:
// matrices are written down entry by entry from the generator definitions.

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "zxtk/diagram.hpp"
#include "zxtk/dsl.hpp"
#include "zxtk/interp.hpp"

namespace fixtures {

using zxtk::cd;
using zxtk::Matrix;

inline const double kRt2 = 1.0 / std::sqrt(2.0);

inline zxtk::Diagram cnot() {
  return zxtk::parse_dsl("(Z(1,2,0) * id) ; (id * X(2,1,0))");
}

// Z(1,2) over Z(2,1): input a, the two parallel wires b and c, output d.
inline zxtk::Diagram spider_pair() {
  const auto d = zxtk::parse_dsl("Z(1,2) ; Z(2,1)");
  std::vector<std::string> names;
  for (std::uint32_t e = 0; e < d.num_edges(); ++e) {
    const std::string l = d.label(zxtk::EdgeId{e});
    names.push_back(l == "a1" ? "a" : l == "e1" ? "b" : l == "e2" ? "c" : "d");
  }
  return d.renamed(names);
}

inline zxtk::EdgeId edge(const zxtk::Diagram& d, const std::string& label) {
  return d.find_edge(label).value();
}

inline int popcount(std::size_t x) {
  int n = 0;
  for (; x; x &= x - 1) ++n;
  return n;
}

// Green spider: 1 on all-zeros, e^{ia} on all-ones.
inline Matrix z_dense(std::size_t n, std::size_t m, double a) {
  Matrix z(std::size_t{1} << m, std::size_t{1} << n);
  z.at(0, 0) += 1.0;
  z.at(z.rows() - 1, z.cols() - 1) += std::polar(1.0, a);
  return z;
}

// Red spider: sum over bit strings of parity phase, 2^{-(n+m)/2} scaled.
inline Matrix x_dense(std::size_t n, std::size_t m, double a) {
  Matrix x(std::size_t{1} << m, std::size_t{1} << n);
  const double s = std::pow(2.0, -0.5 * static_cast<double>(n + m));
  for (std::size_t r = 0; r < x.rows(); ++r)
    for (std::size_t c = 0; c < x.cols(); ++c) {
      const int p = (popcount(r) + popcount(c)) & 1;
      x.at(r, c) = s * (1.0 + (p ? -1.0 : 1.0) * std::polar(1.0, a));
    }
  return x;
}

inline Matrix h_dense() {
  return Matrix(2, 2, {kRt2, kRt2, kRt2, -kRt2});
}

inline Matrix id_dense(std::size_t n) { return Matrix::identity(std::size_t{1} << n); }

// CNOT scaled by 1/sqrt(2), the matrix of cnot() above.
inline Matrix cnot_matrix() {
  Matrix m(4, 4);
  m.at(0, 0) = m.at(1, 1) = m.at(2, 3) = m.at(3, 2) = kRt2;
  return m;
}

struct DslText {
  std::string text;
  std::size_t outputs = 0;
};

// A random well-typed expression with `inputs` open inputs. Angles mix exact
// multiples of pi with decimals, and spacing is varied so canonicalisation
// has something to do.
inline DslText random_dsl(std::mt19937_64& rng, std::size_t inputs, int depth) {
  auto pick = [&](std::size_t n) {
    return static_cast<std::size_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
  };
  auto angle = [&]() -> std::string {
    static const char* pool[] = {"", ",0", ",pi", ",pi/4", ",-pi/2", ",3*pi/4",
                                 ",0.3", ",-1.25", ",7pi/8"};
    return pool[pick(9)];
  };
  if (depth > 0 && pick(3) != 0) {
    if (pick(2) == 0) {
      const DslText a = random_dsl(rng, inputs, depth - 1);
      const DslText b = random_dsl(rng, a.outputs, depth - 1);
      return {"(" + a.text + (pick(2) ? " ; " : ";") + b.text + ")", b.outputs};
    }
    const std::size_t left = inputs == 0 ? 0 : pick(inputs + 1);
    const DslText a = random_dsl(rng, left, depth - 1);
    const DslText b = random_dsl(rng, inputs - left, depth - 1);
    return {a.text + (pick(2) ? " * " : "*") + b.text, a.outputs + b.outputs};
  }
  std::vector<DslText> atoms;
  const std::size_t m = pick(3);
  atoms.push_back({"Z(" + std::to_string(inputs) + "," + std::to_string(m) + angle() + ")", m});
  atoms.push_back({"X(" + std::to_string(inputs) + "," + std::to_string(m) + angle() + ")", m});
  if (inputs == 0) atoms.push_back({"cap", 2});
  if (inputs == 1) {
    atoms.push_back({"H", 1});
    atoms.push_back({"id", 1});
    atoms.push_back({"ground", 0});
  }
  if (inputs == 2) {
    atoms.push_back({"swap", 2});
    atoms.push_back({"cup", 0});
  }
  if (inputs + m == 0) atoms.erase(atoms.begin(), atoms.begin() + 2);
  if (atoms.empty()) return {"Z(0,1)", 1};
  return atoms[pick(atoms.size())];
}

}  // namespace fixtures
