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

// Test seams and brute-force oracles. Everything here recomputes results
// from first principles so it stays independent of the code under test.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "shah/bitvec.hpp"

namespace shah::testing {

// Replays a scripted (a, s) pair list into the shrinking combinator.
struct VectorPairSource {
  std::vector<std::pair<int, int>> pairs;
  std::size_t pos = 0;

  std::pair<int, int> next_pair() {
    if (pos >= pairs.size()) throw std::out_of_range("pair script exhausted");
    return pairs[pos++];
  }
};

// Pair source that never selects; drives the starvation guard.
struct NeverSelectPairSource {
  std::pair<int, int> next_pair() { return {1, 0}; }
};

// Bit source replaying a fixed script; throws if the consumer draws more
// than the script holds, which doubles as a consumption assertion.
struct ScriptedBits {
  BitVec bits;
  std::size_t pos = 0;

  int next_bit() {
    if (pos >= bits.size()) throw std::out_of_range("bit script exhausted");
    return bits.get(pos++);
  }

  BitVec next_bits(std::size_t count) {
    BitVec out(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (next_bit()) out.set(i, 1);
    }
    return out;
  }

  std::size_t consumed() const { return pos; }
};

// Brute-force shrinking rule: the subsequence of a-bits where s == 1.
inline std::vector<int> shrink_filter(const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> out;
  for (const auto& [a, s] : pairs) {
    if (s == 1) out.push_back(a);
  }
  return out;
}

// Direct recomputation of the six diffusion quantities, written as plain
// loops over the defining formulas.
struct BruteDiffusion {
  int b_min;
  int b_max;
  double b_mean;
  double p_mean_percent;
  double delta_b;
  double delta_p_percent;
};

inline BruteDiffusion brute_diffusion(const std::vector<int>& b, int n) {
  BruteDiffusion r{b[0], b[0], 0.0, 0.0, 0.0, 0.0};
  const auto count = static_cast<double>(b.size());
  double sum = 0.0;
  for (int v : b) {
    if (v < r.b_min) r.b_min = v;
    if (v > r.b_max) r.b_max = v;
    sum += v;
  }
  r.b_mean = sum / count;
  r.p_mean_percent = r.b_mean / n * 100.0;
  double acc_b = 0.0;
  double acc_p = 0.0;
  for (int v : b) {
    acc_b += (v - r.b_mean) * (v - r.b_mean);
    acc_p += (static_cast<double>(v) / n - r.b_mean / n) *
             (static_cast<double>(v) / n - r.b_mean / n);
  }
  r.delta_b = std::sqrt(acc_b / (count - 1.0));
  r.delta_p_percent = std::sqrt(acc_p / (count - 1.0)) * 100.0;
  return r;
}

inline std::string bits_to_string(const BitVec& v) {
  std::string s;
  s.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) s.push_back(v.get(i) ? '1' : '0');
  return s;
}

inline BitVec bits_from_string(std::string_view s) {
  BitVec v;
  for (char c : s) v.push_back(c == '1' ? 1 : 0);
  return v;
}

}  // namespace shah::testing
