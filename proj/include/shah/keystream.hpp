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

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "shah/bitvec.hpp"
#include "shah/errors.hpp"
#include "shah/tinkerbell.hpp"

namespace shah {

inline constexpr std::uint32_t kDefaultWarmup = 3500;

// Seeds this far outside the attractor box are rejected up front by
// validate_key(); the divergence guard catches everything else at run time.
inline constexpr double kSeedBound = 1.5;

// Consecutive discarded (a, s) pairs tolerated before the stream reports a
// pathological selector orbit.
inline constexpr std::size_t kStarvationLimit = 1'000'000;

// The secret: two seed pairs, one per map, plus the warm-up counts.
//
// The Keystream constructor itself only insists on finite seeds and lets
// the divergence guard reject seeds outside the basin during warm-up;
// validate_key() additionally enforces the [-kSeedBound, kSeedBound] box
// and is applied to every key that crosses the artifact boundary (key
// files, CLI seeds).
struct Key {
  double x10 = 0.0;
  double y10 = 0.0;
  double x20 = 0.0;
  double y20 = 0.0;
  std::uint32_t m_warmup = kDefaultWarmup;
  std::uint32_t n_warmup = kDefaultWarmup;
};

inline constexpr Key kDefaultKey{
    -0.423555643379287, -0.762576287931311,
    -0.276976682878721, -0.348339839900213,
    kDefaultWarmup, kDefaultWarmup};

inline void validate_key(const Key& key) {
  const double seeds[] = {key.x10, key.y10, key.x20, key.y20};
  for (double s : seeds) {
    if (!std::isfinite(s)) throw KeyError("key seed is not finite");
    if (std::fabs(s) > kSeedBound) {
      throw KeyError("key seed outside the attractor neighbourhood [-1.5, 1.5]");
    }
  }
}

// Shrinking decimation over any source of (a, s) bit pairs: emit a exactly
// where s == 1, discard the rest. Templated so tests can drive it with
// scripted pair sequences.
template <class PairSource>
int shrink_next_bit(PairSource& pairs, std::size_t starvation_limit = kStarvationLimit) {
  for (std::size_t tries = 0; tries < starvation_limit; ++tries) {
    const auto [a, s] = pairs.next_pair();
    if (s == 1) return a;
  }
  throw StarvationError("selector map emitted no 1-bit; seed is pathological");
}

// Stateful bit source: two maps advanced in lockstep (discarded pairs
// consume one step of each), decimated by the shrinking rule. Copyable;
// copies evolve independently.
class Keystream {
 public:
  explicit Keystream(const Key& key, const TinkerbellParams& params = kDefaultParams)
      : maps_{TinkerbellState{key.x10, key.y10, params},
              TinkerbellState{key.x20, key.y20, params}} {
    const double seeds[] = {key.x10, key.y10, key.x20, key.y20};
    for (double s : seeds) {
      if (!std::isfinite(s)) throw KeyError("key seed is not finite");
    }
    for (std::uint32_t i = 0; i < key.m_warmup; ++i) maps_.a = step(maps_.a);
    for (std::uint32_t i = 0; i < key.n_warmup; ++i) maps_.b = step(maps_.b);
  }

  int next_bit() {
    const int bit = shrink_next_bit(maps_);
    ++emitted_;
    return bit;
  }

  BitVec next_bits(std::size_t count) {
    BitVec out(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (next_bit()) out.set(i, 1);
    }
    return out;
  }

  // 8 * byte_count keystream bits packed MSB-first — the raw format the
  // external randomness suites consume.
  std::vector<std::uint8_t> export_bytes(std::size_t byte_count) {
    const BitVec bits = next_bits(byte_count * 8);
    return {bits.bytes().begin(), bits.bytes().end()};
  }

  std::uint64_t emitted_count() const { return emitted_; }

  const TinkerbellState& map_a() const { return maps_.a; }
  const TinkerbellState& map_b() const { return maps_.b; }

 private:
  struct CoupledMaps {
    TinkerbellState a;
    TinkerbellState b;
    std::pair<int, int> next_pair() {
      a = step(a);
      b = step(b);
      return {extract_bit(a.y), extract_bit(b.y)};
    }
  };

  CoupledMaps maps_;
  std::uint64_t emitted_ = 0;
};

// Key file format: four seeds with 17 significant digits (round-trip exact
// for binary64) followed by the two warm-up counts, whitespace separated.
// Rendered and parsed with <charconv>, so key files never depend on the
// process locale.

inline std::string format_key(const Key& key) {
  char buf[64];
  std::string out;
  for (double v : {key.x10, key.y10, key.x20, key.y20}) {
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    out.append(buf, res.ptr);
    out.push_back(' ');
  }
  out += std::to_string(key.m_warmup);
  out.push_back(' ');
  out += std::to_string(key.n_warmup);
  out.push_back('\n');
  return out;
}

inline Key parse_key(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    if (end > pos) tokens.push_back(text.substr(pos, end - pos));
    pos = end;
  }
  if (tokens.size() != 6) {
    throw KeyError("malformed key: expected four seeds and two warm-up counts");
  }

  auto parse_double = [](std::string_view token) {
    double value = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
      throw KeyError("malformed key: bad seed value");
    }
    return value;
  };
  auto parse_count = [](std::string_view token) {
    long long value = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size() || value < 0 ||
        value > 0xFFFFFFFFLL) {
      throw KeyError("warm-up counts must be in [0, 2^32)");
    }
    return static_cast<std::uint32_t>(value);
  };

  Key key;
  key.x10 = parse_double(tokens[0]);
  key.y10 = parse_double(tokens[1]);
  key.x20 = parse_double(tokens[2]);
  key.y20 = parse_double(tokens[3]);
  key.m_warmup = parse_count(tokens[4]);
  key.n_warmup = parse_count(tokens[5]);
  validate_key(key);
  return key;
}

}  // namespace shah
