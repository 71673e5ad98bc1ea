// Copyright 2026 The Shah Project Authors
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

#include <stdexcept>
#include <string>

namespace shah {

// Orbit left the attractor region; the seed is not a usable key.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

// The selector map produced no 1-bit for an implausibly long stretch.
class StarvationError : public std::runtime_error {
 public:
  explicit StarvationError(const std::string& what) : std::runtime_error(what) {}
};

class KeyError : public std::runtime_error {
 public:
  explicit KeyError(const std::string& what) : std::runtime_error(what) {}
};

class LengthMismatchError : public std::invalid_argument {
 public:
  explicit LengthMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

// Sample statistics that divide by N-1 need at least two observations.
class DegenerateSampleError : public std::invalid_argument {
 public:
  explicit DegenerateSampleError(const std::string& what) : std::invalid_argument(what) {}
};

class InsufficientDataError : public std::invalid_argument {
 public:
  explicit InsufficientDataError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace shah
