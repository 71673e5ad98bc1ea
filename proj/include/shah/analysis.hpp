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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shah/hash.hpp"

namespace shah {

// Evaluation harness: diffusion statistics over single-bit-flip trials,
// collision statistics over digests compared symbol by symbol, and the
// six-quantity byte-stream checks (entropy, chi-square, mean, Monte Carlo
// pi, serial correlation).

struct DiffusionReport {
  int digest_bits = 0;
  std::size_t trials = 0;
  int b_min = 0;               // fewest changed bits seen
  int b_max = 0;               // most changed bits seen
  double b_mean = 0.0;         // mean changed bits
  double p_mean_percent = 0.0; // b_mean / n * 100
  double delta_b = 0.0;        // sample std deviation of changed bits
  double delta_p_percent = 0.0;
};

struct CollisionReport {
  int digest_bits = 0;
  std::size_t trials = 0;
  long long d_min = 0;
  long long d_max = 0;
  double d_mean = 0.0;
  // hit_histogram[k] = trials in which exactly k digest symbols matched
  // at the same position; k runs to n/8 inclusive.
  std::vector<std::uint64_t> hit_histogram;
};

struct EntReport {
  double entropy_bits_per_byte = 0.0;
  double chi_square = 0.0;       // raw statistic against uniform-256
  double arithmetic_mean = 0.0;
  double monte_carlo_pi = 0.0;
  double serial_correlation = 0.0;
};

inline DiffusionReport diffusion_stats(std::span<const int> changed_bits, int digest_bits) {
  const std::size_t count = changed_bits.size();
  if (count < 2) {
    throw DegenerateSampleError("diffusion statistics need at least two trials");
  }
  DiffusionReport r;
  r.digest_bits = digest_bits;
  r.trials = count;
  r.b_min = changed_bits[0];
  r.b_max = changed_bits[0];
  double sum = 0.0;
  for (int b : changed_bits) {
    if (b < 0 || b > digest_bits) {
      throw std::invalid_argument("changed-bit count outside [0, n]");
    }
    r.b_min = std::min(r.b_min, b);
    r.b_max = std::max(r.b_max, b);
    sum += b;
  }
  const double n = digest_bits;
  r.b_mean = sum / static_cast<double>(count);
  r.p_mean_percent = r.b_mean / n * 100.0;
  double sq = 0.0;
  double sq_frac = 0.0;
  const double p_frac = r.b_mean / n;
  for (int b : changed_bits) {
    sq += (b - r.b_mean) * (b - r.b_mean);
    sq_frac += (b / n - p_frac) * (b / n - p_frac);
  }
  r.delta_b = std::sqrt(sq / static_cast<double>(count - 1));
  r.delta_p_percent = std::sqrt(sq_frac / static_cast<double>(count - 1)) * 100.0;
  return r;
}

// Sum of |a[i] - b[i]| over the digests' byte symbols.
inline long long absolute_difference(std::span<const std::uint8_t> a,
                                     std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) {
    throw LengthMismatchError("absolute difference requires equal lengths");
  }
  long long d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i]));
  }
  return d;
}

inline long long absolute_difference(std::string_view a, std::string_view b) {
  return absolute_difference(as_bytes(a), as_bytes(b));
}

// Positional matches plus absolute difference for one digest pair.
struct CollisionTally {
  std::size_t hits = 0;
  long long abs_diff = 0;
};

inline CollisionTally tally_collision(const Digest& a, const Digest& b) {
  const auto sa = a.bytes();
  const auto sb = b.bytes();
  if (sa.size() != sb.size()) {
    throw LengthMismatchError("collision tally requires equal digest sizes");
  }
  CollisionTally t;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i] == sb[i]) ++t.hits;
  }
  t.abs_diff = absolute_difference(sa, sb);
  return t;
}

// Auxiliary randomness for the harness: message material and flip
// positions come from a seeded mt19937_64 (sequence pinned by the C++
// standard), kept deliberately separate from the keystream under test so
// every report is replayable. Sampling avoids std::*_distribution, whose
// algorithms vary between standard libraries.
class AuxRng {
 public:
  explicit AuxRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Modulo bias is ~bound/2^64, far below anything the reports resolve.
  std::size_t index(std::size_t bound) {
    return static_cast<std::size_t>(gen_() % bound);
  }

  std::vector<std::uint8_t> bytes(std::size_t count) {
    std::vector<std::uint8_t> out(count);
    std::uint64_t word = 0;
    int left = 0;
    for (auto& b : out) {
      if (left == 0) {
        word = gen_();
        left = 8;
      }
      b = static_cast<std::uint8_t>(word & 0xFF);
      word >>= 8;
      --left;
    }
    return out;
  }

 private:
  std::mt19937_64 gen_;
};

enum class TrialVariant {
  kTypeA,  // fresh random message every trial
  kTypeB,  // one fixed message, a random bit flipped per trial
};

namespace detail {

inline void flip_bit(std::vector<std::uint8_t>& bytes, std::size_t bit) {
  bytes[bit >> 3] ^= static_cast<std::uint8_t>(0x80u >> (bit & 7));
}

inline std::size_t message_bytes_for(std::size_t message_bits) {
  if (message_bits == 0 || message_bits % 8 != 0) {
    throw std::invalid_argument("message length must be a positive multiple of 8 bits");
  }
  return message_bits / 8;
}

}  // namespace detail

inline DiffusionReport run_diffusion(const Key& key, DigestSize size, std::size_t trials,
                                     TrialVariant variant, std::uint64_t rng_seed) {
  const auto n = static_cast<std::size_t>(size.bits());
  const std::size_t message_bits = 50 * n;
  const std::size_t message_bytes = detail::message_bytes_for(message_bits);
  AuxRng rng(rng_seed);

  std::vector<std::uint8_t> fixed_message;
  std::optional<Digest> fixed_digest;
  if (variant == TrialVariant::kTypeB) {
    fixed_message = rng.bytes(message_bytes);
    fixed_digest = digest(fixed_message, key, size);
  }

  std::vector<int> changed;
  changed.reserve(trials);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<std::uint8_t> message = (variant == TrialVariant::kTypeA)
                                            ? rng.bytes(message_bytes)
                                            : fixed_message;
    const Digest base = (variant == TrialVariant::kTypeA) ? digest(message, key, size)
                                                          : *fixed_digest;
    detail::flip_bit(message, rng.index(message_bits));
    const Digest mutated = digest(message, key, size);
    changed.push_back(static_cast<int>(base.hamming_distance(mutated)));
  }
  return diffusion_stats(changed, size.bits());
}

inline DiffusionReport run_type_a_diffusion(const Key& key, DigestSize size,
                                            std::size_t trials, std::uint64_t rng_seed) {
  return run_diffusion(key, size, trials, TrialVariant::kTypeA, rng_seed);
}

inline DiffusionReport run_type_b_diffusion(const Key& key, DigestSize size,
                                            std::size_t trials, std::uint64_t rng_seed) {
  return run_diffusion(key, size, trials, TrialVariant::kTypeB, rng_seed);
}

inline CollisionReport run_collision_test(const Key& key, DigestSize size,
                                          std::size_t trials, TrialVariant variant,
                                          std::size_t message_bits, std::uint64_t rng_seed) {
  if (trials == 0) throw std::invalid_argument("collision test needs at least one trial");
  const std::size_t message_bytes = detail::message_bytes_for(message_bits);
  const auto symbols = static_cast<std::size_t>(size.bytes());
  AuxRng rng(rng_seed);

  CollisionReport r;
  r.digest_bits = size.bits();
  r.trials = trials;
  r.hit_histogram.assign(symbols + 1, 0);

  std::vector<std::uint8_t> fixed_message;
  std::optional<Digest> fixed_digest;
  if (variant == TrialVariant::kTypeB) {
    fixed_message = rng.bytes(message_bytes);
    fixed_digest = digest(fixed_message, key, size);
  }

  long long d_sum = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::vector<std::uint8_t> message = (variant == TrialVariant::kTypeA)
                                            ? rng.bytes(message_bytes)
                                            : fixed_message;
    const Digest base = (variant == TrialVariant::kTypeA) ? digest(message, key, size)
                                                          : *fixed_digest;
    detail::flip_bit(message, rng.index(message_bits));
    const Digest mutated = digest(message, key, size);

    const CollisionTally tally = tally_collision(base, mutated);
    ++r.hit_histogram[tally.hits];
    d_sum += tally.abs_diff;
    if (trial == 0) {
      r.d_min = tally.abs_diff;
      r.d_max = tally.abs_diff;
    } else {
      r.d_min = std::min(r.d_min, tally.abs_diff);
      r.d_max = std::max(r.d_max, tally.abs_diff);
    }
  }
  r.d_mean = static_cast<double>(d_sum) / static_cast<double>(trials);
  return r;
}

// Six-quantity check over raw bytes. Monte Carlo pi consumes consecutive
// non-overlapping 6-byte points (24-bit x, 24-bit y) and counts those
// inside the quarter circle of radius 2^24 - 1.
inline EntReport ent_suite(std::span<const std::uint8_t> data) {
  if (data.size() < 6) {
    throw InsufficientDataError("byte-stream checks need at least 6 bytes");
  }
  std::array<std::uint64_t, 256> freq{};
  for (auto b : data) ++freq[b];
  const auto total = static_cast<double>(data.size());

  EntReport r;
  double mean_sum = 0.0;
  const double expected = total / 256.0;
  for (std::size_t v = 0; v < 256; ++v) {
    const auto f = static_cast<double>(freq[v]);
    if (freq[v] != 0) {
      const double p = f / total;
      r.entropy_bits_per_byte -= p * std::log2(p);
    }
    r.chi_square += (f - expected) * (f - expected) / expected;
    mean_sum += static_cast<double>(v) * f;
  }
  r.arithmetic_mean = mean_sum / total;

  const std::size_t points = data.size() / 6;
  constexpr double kInCircle = 16777215.0 * 16777215.0;  // (2^24 - 1)^2
  std::size_t inside = 0;
  for (std::size_t p = 0; p < points; ++p) {
    const std::uint8_t* q = data.data() + 6 * p;
    const double x = static_cast<double>((q[0] << 16) | (q[1] << 8) | q[2]);
    const double y = static_cast<double>((q[3] << 16) | (q[4] << 8) | q[5]);
    if (x * x + y * y <= kInCircle) ++inside;
  }
  r.monte_carlo_pi = 4.0 * static_cast<double>(inside) / static_cast<double>(points);

  // Lag-1 correlation of consecutive byte values.
  if (data.size() >= 2) {
    const std::size_t pairs = data.size() - 1;
    double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < pairs; ++i) {
      const double x = data[i];
      const double y = data[i + 1];
      sx += x;
      sy += y;
      sxx += x * x;
      syy += y * y;
      sxy += x * y;
    }
    const auto k = static_cast<double>(pairs);
    const double cov = sxy / k - (sx / k) * (sy / k);
    const double var_x = sxx / k - (sx / k) * (sx / k);
    const double var_y = syy / k - (sy / k) * (sy / k);
    const double denom = std::sqrt(var_x * var_y);
    r.serial_correlation = denom > 0.0 ? cov / denom : 0.0;
  }
  return r;
}

// ---- report rendering: `name=value` text and `statistic,value` CSV ----

namespace detail {

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace detail

inline std::string to_text(const DiffusionReport& r, TrialVariant variant) {
  std::string out;
  out += "test=diffusion\n";
  out += std::string("variant=") + (variant == TrialVariant::kTypeA ? "A" : "B") + "\n";
  out += "n=" + std::to_string(r.digest_bits) + "\n";
  out += "trials=" + std::to_string(r.trials) + "\n";
  out += "b_min=" + std::to_string(r.b_min) + "\n";
  out += "b_max=" + std::to_string(r.b_max) + "\n";
  out += "b_mean=" + detail::fmt_double(r.b_mean) + "\n";
  out += "p_mean_percent=" + detail::fmt_double(r.p_mean_percent) + "\n";
  out += "delta_b=" + detail::fmt_double(r.delta_b) + "\n";
  out += "delta_p_percent=" + detail::fmt_double(r.delta_p_percent) + "\n";
  return out;
}

inline std::string to_csv(const DiffusionReport& r, TrialVariant variant) {
  std::string out = "statistic,value\n";
  out += std::string("variant,") + (variant == TrialVariant::kTypeA ? "A" : "B") + "\n";
  out += "n," + std::to_string(r.digest_bits) + "\n";
  out += "trials," + std::to_string(r.trials) + "\n";
  out += "b_min," + std::to_string(r.b_min) + "\n";
  out += "b_max," + std::to_string(r.b_max) + "\n";
  out += "b_mean," + detail::fmt_double(r.b_mean) + "\n";
  out += "p_mean_percent," + detail::fmt_double(r.p_mean_percent) + "\n";
  out += "delta_b," + detail::fmt_double(r.delta_b) + "\n";
  out += "delta_p_percent," + detail::fmt_double(r.delta_p_percent) + "\n";
  return out;
}

inline std::string to_text(const CollisionReport& r, TrialVariant variant) {
  std::string out;
  out += "test=collision\n";
  out += std::string("variant=") + (variant == TrialVariant::kTypeA ? "A" : "B") + "\n";
  out += "n=" + std::to_string(r.digest_bits) + "\n";
  out += "trials=" + std::to_string(r.trials) + "\n";
  out += "d_min=" + std::to_string(r.d_min) + "\n";
  out += "d_max=" + std::to_string(r.d_max) + "\n";
  out += "d_mean=" + detail::fmt_double(r.d_mean) + "\n";
  for (std::size_t k = 0; k < r.hit_histogram.size(); ++k) {
    out += "hits_" + std::to_string(k) + "=" + std::to_string(r.hit_histogram[k]) + "\n";
  }
  return out;
}

inline std::string to_csv(const CollisionReport& r, TrialVariant variant) {
  std::string out = "statistic,value\n";
  out += std::string("variant,") + (variant == TrialVariant::kTypeA ? "A" : "B") + "\n";
  out += "n," + std::to_string(r.digest_bits) + "\n";
  out += "trials," + std::to_string(r.trials) + "\n";
  out += "d_min," + std::to_string(r.d_min) + "\n";
  out += "d_max," + std::to_string(r.d_max) + "\n";
  out += "d_mean," + detail::fmt_double(r.d_mean) + "\n";
  for (std::size_t k = 0; k < r.hit_histogram.size(); ++k) {
    out += std::to_string(k) + "," + std::to_string(r.hit_histogram[k]) + "\n";
  }
  return out;
}

inline std::string to_text(const EntReport& r) {
  std::string out;
  out += "test=ent\n";
  out += "entropy_bits_per_byte=" + detail::fmt_double(r.entropy_bits_per_byte) + "\n";
  out += "chi_square=" + detail::fmt_double(r.chi_square) + "\n";
  out += "arithmetic_mean=" + detail::fmt_double(r.arithmetic_mean) + "\n";
  out += "monte_carlo_pi=" + detail::fmt_double(r.monte_carlo_pi) + "\n";
  out += "serial_correlation=" + detail::fmt_double(r.serial_correlation) + "\n";
  return out;
}

inline std::string to_csv(const EntReport& r) {
  std::string out = "statistic,value\n";
  out += "entropy_bits_per_byte," + detail::fmt_double(r.entropy_bits_per_byte) + "\n";
  out += "chi_square," + detail::fmt_double(r.chi_square) + "\n";
  out += "arithmetic_mean," + detail::fmt_double(r.arithmetic_mean) + "\n";
  out += "monte_carlo_pi," + detail::fmt_double(r.monte_carlo_pi) + "\n";
  out += "serial_correlation," + detail::fmt_double(r.serial_correlation) + "\n";
  return out;
}

}  // namespace shah
