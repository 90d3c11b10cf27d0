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

#include "zxtk/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "zxtk/error.hpp"
#include "zxtk/graph.hpp"

namespace zxtk {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<cd> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw Error("matrix data has " + std::to_string(data_.size()) +
                " entries, expected " + std::to_string(rows_ * cols_));
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Matrix Matrix::conj() const {
  Matrix out = *this;
  for (auto& x : out.data_) x = std::conj(x);
  return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error("matrix product shape mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const cd a = at(i, k);
      if (a == cd{}) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        out.at(i, j) += a * rhs.at(k, j);
    }
  return out;
}

Matrix& Matrix::operator*=(cd s) {
  for (auto& x : data_) x *= s;
  return *this;
}

std::size_t Matrix::nonzeros(double tol) const {
  return static_cast<std::size_t>(std::count_if(
      data_.begin(), data_.end(), [&](cd x) { return std::abs(x) > tol; }));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cd x = a.at(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out.at(i * b.rows() + k, j * b.cols() + l) = x * b.at(k, l);
    }
  return out;
}

Ket apply(const Matrix& m, const Ket& v) {
  if (v.size() != m.cols())
    throw Error("cannot apply a " + std::to_string(m.rows()) + "x" +
                std::to_string(m.cols()) + " matrix to a vector of size " +
                std::to_string(v.size()));
  Ket out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

Ket basis_ket(const std::vector<int>& bits) {
  std::size_t index = 0;
  for (int b : bits) index = (index << 1) | static_cast<std::size_t>(b & 1);
  Ket v(std::size_t{1} << bits.size());
  v[index] = 1.0;
  return v;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

bool approx_equal(const Matrix& a, const Matrix& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

std::size_t wire_count(std::size_t n) {
  std::size_t w = 0;
  while ((std::size_t{1} << w) < n) ++w;
  if ((std::size_t{1} << w) != n)
    throw Error(std::to_string(n) + " is not a power of two");
  return w;
}

Matrix permute_wires(const Matrix& m, const std::vector<std::size_t>& row_perm,
                     const std::vector<std::size_t>& col_perm) {
  const std::size_t nr = row_perm.size();
  const std::size_t nc = col_perm.size();
  if ((std::size_t{1} << nr) != m.rows() || (std::size_t{1} << nc) != m.cols())
    throw Error("wire permutation does not match matrix shape");
  auto remap = [](std::size_t idx, const std::vector<std::size_t>& perm) {
    const std::size_t n = perm.size();
    std::size_t old = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t bit = (idx >> (n - 1 - j)) & 1;
      old |= bit << (n - 1 - perm[j]);
    }
    return old;
  };
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const std::size_t orow = remap(r, row_perm);
    for (std::size_t c = 0; c < m.cols(); ++c)
      out.at(r, c) = m.at(orow, remap(c, col_perm));
  }
  return out;
}

Matrix doubled(const Matrix& m) {
  const std::size_t nr = wire_count(m.rows());
  const std::size_t nc = wire_count(m.cols());
  auto interleave = [](std::size_t n) {
    std::vector<std::size_t> perm(2 * n);
    for (std::size_t j = 0; j < 2 * n; ++j)
      perm[j] = (j % 2 == 0) ? j / 2 : n + j / 2;
    return perm;
  };
  return permute_wires(kron(m, m.conj()), interleave(nr), interleave(nc));
}

// ---------------------------------------------------------------------------
// Contraction

namespace {

struct Tensor {
  std::vector<std::uint32_t> vars;  // edge ids, big-endian index order
  std::vector<cd> data;
};

inline std::size_t bit_of(std::size_t idx, std::size_t pos, std::size_t n) {
  return (idx >> (n - 1 - pos)) & 1;
}

/// Sums over the diagonal of any variable listed twice (a self-loop).
Tensor trace_duplicates(Tensor t) {
  for (;;) {
    std::size_t a = SIZE_MAX, b = SIZE_MAX;
    for (std::size_t i = 0; i < t.vars.size() && a == SIZE_MAX; ++i)
      for (std::size_t j = i + 1; j < t.vars.size(); ++j)
        if (t.vars[i] == t.vars[j]) {
          a = i;
          b = j;
          break;
        }
    if (a == SIZE_MAX) return t;
    const std::size_t n = t.vars.size();
    Tensor out;
    for (std::size_t i = 0; i < n; ++i)
      if (i != a && i != b) out.vars.push_back(t.vars[i]);
    out.data.assign(std::size_t{1} << out.vars.size(), cd{});
    for (std::size_t idx = 0; idx < t.data.size(); ++idx) {
      if (bit_of(idx, a, n) != bit_of(idx, b, n)) continue;
      std::size_t o = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (i != a && i != b) o = (o << 1) | bit_of(idx, i, n);
      out.data[o] += t.data[idx];
    }
    t = std::move(out);
  }
}

Tensor generator_tensor(const Generator& g) {
  Tensor t;
  for (auto e : g.inputs) t.vars.push_back(e.v);
  for (auto e : g.outputs) t.vars.push_back(e.v);
  const std::size_t k = t.vars.size();
  t.data.assign(std::size_t{1} << k, cd{});
  switch (g.kind) {
    case GenKind::ZSpider: {
      const cd phase = std::polar(1.0, g.angle.value());
      if (k == 0) {
        t.data[0] = 1.0 + phase;
      } else {
        t.data[0] = 1.0;
        t.data.back() += phase;
      }
      break;
    }
    case GenKind::H: {
      const double s = 1.0 / std::sqrt(2.0);
      t.data = {s, s, s, -s};
      break;
    }
    case GenKind::Cup:
    case GenKind::Cap:
      t.data[0] = 1.0;
      t.data[3] = 1.0;
      break;
    case GenKind::Ground:
      throw InvalidDiagram("ground generator present; use interp_cpm");
  }
  return trace_duplicates(std::move(t));
}

Tensor contract(const Tensor& a, const Tensor& b) {
  std::vector<std::uint32_t> shared, result;
  for (auto v : a.vars)
    if (std::find(b.vars.begin(), b.vars.end(), v) != b.vars.end())
      shared.push_back(v);
    else
      result.push_back(v);
  for (auto v : b.vars)
    if (std::find(shared.begin(), shared.end(), v) == shared.end())
      result.push_back(v);

  // Joint index over result ++ shared.
  std::vector<std::uint32_t> joint = result;
  joint.insert(joint.end(), shared.begin(), shared.end());
  const std::size_t n = joint.size();
  auto positions = [&](const Tensor& t) {
    std::vector<std::size_t> pos;
    for (auto v : t.vars)
      pos.push_back(static_cast<std::size_t>(
          std::find(joint.begin(), joint.end(), v) - joint.begin()));
    return pos;
  };
  const auto pa = positions(a);
  const auto pb = positions(b);

  Tensor out;
  out.vars = result;
  out.data.assign(std::size_t{1} << result.size(), cd{});
  const std::size_t shared_span = std::size_t{1} << shared.size();
  for (std::size_t idx = 0; idx < (std::size_t{1} << n); ++idx) {
    std::size_t ia = 0, ib = 0;
    for (auto p : pa) ia = (ia << 1) | bit_of(idx, p, n);
    for (auto p : pb) ib = (ib << 1) | bit_of(idx, p, n);
    const cd x = a.data[ia];
    if (x == cd{}) continue;
    out.data[idx / shared_span] += x * b.data[ib];
  }
  return out;
}

std::size_t merged_rank(const Tensor& a, const Tensor& b, bool& shares) {
  std::size_t common = 0;
  for (auto v : a.vars)
    if (std::find(b.vars.begin(), b.vars.end(), v) != b.vars.end()) ++common;
  shares = common > 0;
  return a.vars.size() + b.vars.size() - 2 * common;
}

}  // namespace

Matrix interp(const Diagram& d, InterpOptions opts) {
  std::vector<Tensor> pool;
  for (const auto& g : d.generators()) pool.push_back(generator_tensor(g));

  std::mt19937_64 rng(opts.shuffle_seed.value_or(0));
  while (pool.size() > 1) {
    std::size_t bi = SIZE_MAX, bj = SIZE_MAX, best = SIZE_MAX;
    std::vector<std::pair<std::size_t, std::size_t>> sharing;
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        bool shares = false;
        const std::size_t rank = merged_rank(pool[i], pool[j], shares);
        if (!shares) continue;
        sharing.push_back({i, j});
        if (rank < best) {
          best = rank;
          bi = i;
          bj = j;
        }
      }
    if (sharing.empty()) {
      // Disconnected pieces: outer products, smallest first.
      bi = 0;
      bj = 1;
    } else if (opts.shuffle_seed) {
      std::tie(bi, bj) = sharing[rng() % sharing.size()];
    }
    Tensor merged = contract(pool[bi], pool[bj]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(bj));
    pool[bi] = std::move(merged);
  }
  Tensor whole = pool.empty() ? Tensor{{}, {cd{1.0}}} : std::move(pool[0]);

  const std::size_t m = d.outputs().size();
  const std::size_t n = d.inputs().size();
  Matrix out(std::size_t{1} << m, std::size_t{1} << n);
  constexpr int kFree = -1;
  std::vector<int> value(d.num_edges(), kFree);
  const std::size_t k = whole.vars.size();
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      std::fill(value.begin(), value.end(), kFree);
      bool consistent = true;
      auto assign = [&](EdgeId e, std::size_t bit) {
        int& slot = value[e.v];
        if (slot == kFree) {
          slot = static_cast<int>(bit);
        } else if (slot != static_cast<int>(bit)) {
          consistent = false;
        }
      };
      for (std::size_t j = 0; j < m; ++j) assign(d.outputs()[j], bit_of(r, j, m));
      for (std::size_t i = 0; i < n; ++i) assign(d.inputs()[i], bit_of(c, i, n));
      if (!consistent) continue;
      std::size_t idx = 0;
      for (std::size_t p = 0; p < k; ++p)
        idx = (idx << 1) | static_cast<std::size_t>(value[whole.vars[p]]);
      out.at(r, c) = whole.data[idx];
    }
  }
  return out;
}

Matrix interp_cpm(const Diagram& d) { return interp(cpm_construct(d)); }

}  // namespace zxtk
