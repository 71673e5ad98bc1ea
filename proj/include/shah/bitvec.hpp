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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shah/errors.hpp"

namespace shah {

inline std::span<const std::uint8_t> as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

// Packed bit string. Bit 0 is the most significant bit of byte 0 (so hex
// rendering reads naturally left to right); unused trailing bits of the
// last byte are kept zero, which lets comparisons and popcounts run
// bytewise.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t bit_count)
      : bits_(bit_count), bytes_((bit_count + 7) / 8, 0) {}

  static BitVec from_bytes(std::span<const std::uint8_t> data) {
    BitVec v;
    v.bits_ = data.size() * 8;
    v.bytes_.assign(data.begin(), data.end());
    return v;
  }

  std::size_t size() const { return bits_; }
  bool empty() const { return bits_ == 0; }

  int get(std::size_t i) const {
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1;
  }

  void set(std::size_t i, int bit) {
    const auto mask = static_cast<std::uint8_t>(0x80u >> (i & 7));
    if (bit) {
      bytes_[i >> 3] |= mask;
    } else {
      bytes_[i >> 3] &= static_cast<std::uint8_t>(~mask);
    }
  }

  void push_back(int bit) {
    if ((bits_ & 7) == 0) bytes_.push_back(0);
    ++bits_;
    if (bit) set(bits_ - 1, 1);
  }

  void append_zeros(std::size_t count) {
    bits_ += count;
    bytes_.resize((bits_ + 7) / 8, 0);
  }

  BitVec slice(std::size_t pos, std::size_t count) const {
    BitVec out;
    if ((pos & 7) == 0) {
      out.bits_ = count;
      const std::size_t first = pos >> 3;
      out.bytes_.assign(bytes_.begin() + static_cast<std::ptrdiff_t>(first),
                        bytes_.begin() + static_cast<std::ptrdiff_t>(first + (count + 7) / 8));
      out.clear_trailing();
    } else {
      for (std::size_t i = 0; i < count; ++i) out.push_back(get(pos + i));
    }
    return out;
  }

  BitVec& operator^=(const BitVec& other) {
    if (bits_ != other.bits_) {
      throw LengthMismatchError("bit vector XOR requires equal lengths");
    }
    for (std::size_t i = 0; i < bytes_.size(); ++i) bytes_[i] ^= other.bytes_[i];
    return *this;
  }

  // Rotate the whole width left by one: bit 1 moves into bit 0, bit 0
  // wraps to bit size()-1.
  void rotate_left1() {
    if (bits_ == 0) return;
    if ((bits_ & 7) == 0) {
      const int carry = bytes_.front() >> 7;
      for (std::size_t i = 0; i + 1 < bytes_.size(); ++i) {
        bytes_[i] = static_cast<std::uint8_t>((bytes_[i] << 1) | (bytes_[i + 1] >> 7));
      }
      bytes_.back() = static_cast<std::uint8_t>((bytes_.back() << 1) | carry);
    } else {
      const int first = get(0);
      for (std::size_t i = 0; i + 1 < bits_; ++i) set(i, get(i + 1));
      set(bits_ - 1, first);
    }
  }

  std::size_t popcount() const {
    std::size_t total = 0;
    for (auto b : bytes_) total += static_cast<std::size_t>(std::popcount(b));
    return total;
  }

  std::size_t hamming_distance(const BitVec& other) const {
    if (bits_ != other.bits_) {
      throw LengthMismatchError("hamming distance requires equal lengths");
    }
    std::size_t total = 0;
    for (std::size_t i = 0; i < bytes_.size(); ++i) {
      total += static_cast<std::size_t>(
          std::popcount(static_cast<std::uint8_t>(bytes_[i] ^ other.bytes_[i])));
    }
    return total;
  }

  // Uppercase hex, MSB first. Whole bytes only (every digest width is a
  // multiple of 8).
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(bytes_.size() * 2);
    for (auto b : bytes_) {
      out.push_back(kDigits[b >> 4]);
      out.push_back(kDigits[b & 0xF]);
    }
    return out;
  }

  // Whole-byte view of the packed bits; meaningful when size() % 8 == 0.
  std::span<const std::uint8_t> bytes() const { return bytes_; }

  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  void clear_trailing() {
    const std::size_t rem = bits_ & 7;
    if (rem != 0 && !bytes_.empty()) {
      bytes_.back() &= static_cast<std::uint8_t>(0xFFu << (8 - rem));
    }
  }

  std::size_t bits_ = 0;
  std::vector<std::uint8_t> bytes_;
};

}  // namespace shah
