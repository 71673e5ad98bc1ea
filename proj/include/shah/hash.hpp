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

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "shah/bitvec.hpp"
#include "shah/keystream.hpp"

namespace shah {

//  Keyed digest pipeline, driven end to end by one continuous keystream:
//
//    1. expand the message to bits MSB-first, append a mandatory 1 bit,
//       zero-fill to a multiple of the digest width n (pad)
//    2. XOR the padded message with m keystream bits, fold the result's
//       p blocks of n bits into T (compress_blocks)
//    3. flip pass: every 1-bit of T is XORed with the next keystream bit
//       (mix_flip_pass)
//    4. accumulate pass: walk the updated T; a 1-bit XORs the next n
//       keystream bits into U, a 0-bit rotates U left by one
//       (mix_accumulate_pass)
//    5. digest H = T ^ U
//
//  The stream is created once per digest call and consumed across all
//  passes without re-seeding, so a digest costs exactly
//  m + w1 + n*w2 keystream bits (w1/w2 = ones in T before/after the flip
//  pass).

class DigestSize {
 public:
  static std::optional<DigestSize> from_bits(int bits) {
    switch (bits) {
      case 128:
      case 160:
      case 256:
      case 512:
      case 1024:
        return DigestSize(bits);
      default:
        return std::nullopt;
    }
  }

  int bits() const { return bits_; }
  int bytes() const { return bits_ / 8; }

 private:
  explicit DigestSize(int bits) : bits_(bits) {}
  int bits_;
};

using Digest = BitVec;

// Beyond this the m-bit keystream draw dominates; refuse rather than crawl.
inline constexpr std::uint64_t kMaxMessageBits = std::uint64_t{1} << 32;

inline void require_message_size_ok(std::size_t message_bytes) {
  if (message_bytes > kMaxMessageBits / 8) {
    throw std::length_error("message longer than 2^32 bits");
  }
}

struct PaddedMessage {
  BitVec bits;                   // message ‖ 1 ‖ 0*, m = block_count * n bits
  std::size_t block_count = 0;   // p >= 1
};

// The 1 bit is appended even when the message already fills whole blocks,
// so padded strings of different-length messages never coincide.
inline PaddedMessage pad(std::span<const std::uint8_t> message, DigestSize size) {
  const auto n = static_cast<std::size_t>(size.bits());
  PaddedMessage out;
  out.bits = BitVec::from_bytes(message);
  out.bits.push_back(1);
  const std::size_t rem = out.bits.size() % n;
  if (rem != 0) out.bits.append_zeros(n - rem);
  out.block_count = out.bits.size() / n;
  return out;
}

template <class Stream>
BitVec compress_blocks(const PaddedMessage& padded, Stream& stream) {
  const std::size_t m = padded.bits.size();
  const std::size_t n = m / padded.block_count;
  BitVec masked = padded.bits;
  masked ^= stream.next_bits(m);
  BitVec folded(n);
  for (std::size_t block = 0; block < padded.block_count; ++block) {
    folded ^= masked.slice(block * n, n);
  }
  return folded;
}

// Flip pass: 0-bits consume no keystream.
template <class Stream>
void mix_flip_pass(BitVec& t, Stream& stream) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.get(i) == 1) t.set(i, 1 ^ stream.next_bit());
  }
}

template <class Stream>
BitVec mix_accumulate_pass(const BitVec& t, Stream& stream) {
  const std::size_t n = t.size();
  BitVec u(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (t.get(i) == 1) {
      u ^= stream.next_bits(n);
    } else {
      u.rotate_left1();
    }
  }
  return u;
}

template <class Stream>
Digest mix(BitVec t, Stream& stream) {
  mix_flip_pass(t, stream);
  BitVec u = mix_accumulate_pass(t, stream);
  u ^= t;
  return u;
}

inline Digest digest(std::span<const std::uint8_t> message, const Key& key,
                     DigestSize size) {
  require_message_size_ok(message.size());
  Keystream stream(key);
  BitVec t = compress_blocks(pad(message, size), stream);
  return mix(std::move(t), stream);
}

// Uppercase hex, bits()/4 characters.
inline std::string digest_hex(std::span<const std::uint8_t> message, const Key& key,
                              DigestSize size) {
  return digest(message, key, size).to_hex();
}

}  // namespace shah
