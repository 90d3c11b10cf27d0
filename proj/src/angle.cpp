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

#include "zxtk/angle.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "zxtk/error.hpp"

namespace zxtk {

Angle Angle::pi_fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("angle denominator is zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  Angle a;
  a.exact_ = true;
  a.num_ = num / g;
  a.den_ = den / g;
  if (a.num_ == 0) a.den_ = 1;
  return a;
}

Angle Angle::radians(double value) {
  Angle a;
  a.exact_ = false;
  a.rad_ = value;
  return a;
}

double Angle::value() const {
  if (!exact_) return rad_;
  return std::numbers::pi * static_cast<double>(num_) /
         static_cast<double>(den_);
}

Angle Angle::negated() const {
  if (exact_) return pi_fraction(-num_, den_);
  return radians(-rad_);
}

bool Angle::is_zero() const { return exact_ ? num_ == 0 : rad_ == 0.0; }

std::string Angle::to_string() const {
  if (!exact_) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, rad_);
    return std::string(buf, res.ptr);
  }
  if (num_ == 0) return "0";
  std::string out;
  if (num_ == -1) {
    out = "-pi";
  } else if (num_ == 1) {
    out = "pi";
  } else {
    out = std::to_string(num_) + "pi";
  }
  if (den_ != 1) out += "/" + std::to_string(den_);
  return out;
}

namespace {

std::int64_t parse_int(std::string_view s, std::size_t offset) {
  std::int64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw ParseError("bad integer '" + std::string(s) + "' in angle", offset);
  return v;
}

}  // namespace

Angle Angle::parse(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (c != ' ' && c != '\t') compact.push_back(c);
  std::string_view s = compact;
  if (s.empty()) throw ParseError("empty angle", 0);

  auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
      throw ParseError("bad angle '" + compact + "'", 0);
    if (v == 0.0) return pi_fraction(0, 1);
    return radians(v);
  }

  std::string_view coef = s.substr(0, pi_pos);
  if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
  std::int64_t num = 1;
  if (coef.empty() || coef == "+") {
    num = 1;
  } else if (coef == "-") {
    num = -1;
  } else {
    if (coef.front() == '+') coef.remove_prefix(1);
    num = parse_int(coef, 0);
  }
  std::string_view rest = s.substr(pi_pos + 2);
  std::int64_t den = 1;
  if (!rest.empty()) {
    if (rest.front() != '/')
      throw ParseError("expected '/' after pi", pi_pos + 2);
    den = parse_int(rest.substr(1), pi_pos + 3);
  }
  return pi_fraction(num, den);
}

}  // namespace zxtk
