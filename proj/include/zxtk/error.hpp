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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zxtk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Port counts that a generator kind or a composition cannot accept.
class ArityError : public Error {
 public:
  using Error::Error;
};

/// Structurally broken diagram (dangling port, doubly used slot, ...).
class InvalidDiagram : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at offset " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// An exhaustive enumeration went past its configured cap.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// A token state operation that needs a rule where none applies.
class NoRuleApplies : public Error {
 public:
  using Error::Error;
};

class NormalFormReached : public Error {
 public:
  NormalFormReached() : Error("normal form reached") {}
};

class NotWellFormed : public Error {
 public:
  using Error::Error;
};

class NotCycleBalanced : public Error {
 public:
  using Error::Error;
};

}  // namespace zxtk
