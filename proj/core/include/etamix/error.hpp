// Copyright 2026 The etamix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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
#include <vector>

namespace etamix {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A sequence space or materialized product exceeds the dense state cap.
class StateCapExceeded : public Error {
 public:
  StateCapExceeded(const std::string& what, std::size_t cap)
      : Error(what), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

/// Conditioning on a prefix that carries zero mass.
class ZeroProbabilityPrefix : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A target matrix that violates one of the structural properties.
class InvalidTarget : public Error {
 public:
  InvalidTarget(const std::string& what, std::vector<std::string> violations)
      : Error(what), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// The root finder could not bracket the target value.
class BracketError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The evaluation horizon of a rate function is too short for a checkpoint.
class HorizonTooSmall : public Error {
 public:
  HorizonTooSmall(const std::string& what, long required)
      : Error(what), required_(required) {}
  /// Smallest horizon known to be sufficient.
  long required_horizon() const { return required_; }

 private:
  long required_;
};

}  // namespace etamix
