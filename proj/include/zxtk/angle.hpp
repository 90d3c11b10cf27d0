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

namespace zxtk {

/**
 * Spider phase. Kept either as an exact rational multiple of pi (as written
 * in `3pi/4`) or as a plain decimal number of radians; only converted to
 * double when a value is needed.
 */
class Angle {
 public:
  Angle() = default;

  static Angle pi_fraction(std::int64_t num, std::int64_t den);
  static Angle radians(double value);

  /// Accepts `0`, `0.25`, `-1.5e-3`, `pi`, `-pi/2`, `3pi/4`, `3*pi/4`.
  static Angle parse(std::string_view text);

  bool is_exact() const { return exact_; }
  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  double value() const;
  Angle negated() const;
  bool is_zero() const;

  /// Round-trips through parse(). Exact angles print as `pi`, `-3pi/4`, ...
  std::string to_string() const;

  friend bool operator==(const Angle& a, const Angle& b) {
    if (a.exact_ != b.exact_) return false;
    if (a.exact_) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.rad_ == b.rad_;
  }

 private:
  bool exact_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double rad_ = 0.0;
};

}  // namespace zxtk
