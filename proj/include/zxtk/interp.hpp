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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "zxtk/diagram.hpp"

namespace zxtk {

using cd = std::complex<double>;

/// Default tolerance for numeric equality of amplitudes.
inline constexpr double kTolerance = 1e-9;

/**
 * Dense complex matrix, row-major. For a diagram n -> m it is 2^m x 2^n;
 * basis states are big-endian over the ordered wire list, so wire 0 is the
 * most significant bit of the index.
 */
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<cd> data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<cd>& data() const { return data_; }

  cd& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cd& at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  Matrix conj() const;
  Matrix operator*(const Matrix& rhs) const;
  Matrix& operator*=(cd s);
  std::size_t nonzeros(double tol = 1e-12) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cd> data_;
};

using Ket = std::vector<cd>;

Matrix kron(const Matrix& a, const Matrix& b);
Ket apply(const Matrix& m, const Ket& v);
Ket basis_ket(const std::vector<int>& bits);

/// Largest entrywise |a - b|; infinity when the shapes differ.
double max_abs_diff(const Matrix& a, const Matrix& b);
bool approx_equal(const Matrix& a, const Matrix& b, double tol = kTolerance);

struct InterpOptions {
  /// When set, tensors are contracted in a shuffled order driven by this
  /// seed instead of the default greedy order. The result must not change.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Standard interpretation of a ground-free diagram.
Matrix interp(const Diagram& d, InterpOptions opts = {});

/// Interpretation of a diagram with grounds, through its CPM double. Inputs
/// and outputs are interleaved: wire k contributes bits (k, k-bar).
Matrix interp_cpm(const Diagram& d);

/// The doubled matrix of a pure map: M (x) conj(M) with interleaved wires.
Matrix doubled(const Matrix& m);

/**
 * Reorders the wires of a 2^m x 2^n matrix: `row_perm[j]` is the old output
 * position that becomes new output j, likewise `col_perm` for inputs.
 */
Matrix permute_wires(const Matrix& m, const std::vector<std::size_t>& row_perm,
                     const std::vector<std::size_t>& col_perm);

/// Number of wires w with 2^w == n; throws when n is not a power of two.
std::size_t wire_count(std::size_t n);

}  // namespace zxtk
