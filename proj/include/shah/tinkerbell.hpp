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

#include <cmath>
#include <cstdint>
#include <limits>

#include "shah/errors.hpp"

namespace shah {

//  Tinkerbell map:  x' = x^2 - y^2 + c1*x + c2*y
//                   y' = 2*x*y + c3*x + c4*y
//
//  Everything downstream (keystream, digests) depends on every orbit bit,
//  so iteration is pinned to IEEE-754 binary64: fixed left-to-right
//  evaluation, round-to-nearest-even, no fused multiply-add (the build
//  sets -ffp-contract=off and must never enable fast-math).

static_assert(std::numeric_limits<double>::is_iec559,
              "IEEE-754 binary64 arithmetic is required");

struct TinkerbellParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
};

inline constexpr TinkerbellParams kDefaultParams{0.9, -0.6013, 2.0, 0.50};

// Orbits on the attractor stay within roughly the unit box; an excursion
// past this bound is numerical escape, not chaos.
inline constexpr double kDivergenceBound = 10.0;

struct TinkerbellState {
  double x = 0.0;
  double y = 0.0;
  TinkerbellParams params = kDefaultParams;
};

// One map iteration. Throws DivergenceError when the new point leaves the
// divergence bound (also triggers on NaN).
inline TinkerbellState step(const TinkerbellState& s) {
  const double x = s.x;
  const double y = s.y;
  TinkerbellState next = s;
  next.x = x * x - y * y + s.params.c1 * x + s.params.c2 * y;
  next.y = 2.0 * x * y + s.params.c3 * x + s.params.c4 * y;
  if (!(std::fabs(next.x) <= kDivergenceBound) ||
      !(std::fabs(next.y) <= kDivergenceBound)) {
    throw DivergenceError("orbit diverged: seed is outside the attractor basin");
  }
  return next;
}

// Parity of the integer part of y * 1e9, truncated toward zero. Sign drops
// out: extract_bit(y) == extract_bit(-y). The product is formed in double
// precision; callers keep |y| within the divergence bound, far below the
// point where the int64 cast could overflow.
inline int extract_bit(double y) {
  const auto v = static_cast<std::int64_t>(y * 1e9);
  return (v % 2) != 0 ? 1 : 0;
}

}  // namespace shah
