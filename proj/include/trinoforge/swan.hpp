// Copyright 2026 The trinoforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Swan's theorem for binary trinomials: the parity of the number of distinct
// irreducible factors of x^r + x^s + 1 follows from (r, s) alone. Even parity
// forces reducibility, so those s never reach polynomial arithmetic.
//
// For exactly one of r, s odd the count is even iff
//   (a) r even, s odd, r != 2s, rs/2 = 0 or 1 (mod 4), or
//   (b) r odd, s even, s does not divide 2r, r = +-3 (mod 8), or
//   (c) r odd, s even, s divides 2r, r = +-1 (mod 8).
// With r and s both odd the reciprocal x^r + x^(r-s) + 1 has the same count.
//
// For odd r the trinomial is squarefree: with s even, T' = x^(r-1) is coprime
// to T; with s odd, a common root of T and T' = x^(r-1) + x^(s-1) would
// satisfy a^r = a^s and then T(a) = 1. So "number of factors" is unambiguous
// in the search regime.

#include <cstdint>
#include <ranges>
#include <stdexcept>
#include <string_view>

#include "trinoforge/trinomial.hpp"

namespace trinoforge {

enum class Parity { Even, Odd };

inline std::string_view name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

inline Parity factor_parity(const Trinomial& t) {
  std::uint64_t r = t.r;
  std::uint64_t s = t.s;
  if (r % 2 == 0 && s % 2 == 0)
    throw std::domain_error("perfect square - parity undefined here");
  if (r % 2 == 1 && s % 2 == 1) s = r - s;

  bool even;
  if (r % 2 == 0) {
    // rs/2 mod 4 without overflow.
    const std::uint64_t half_rs_mod4 = ((r / 2) % 4) * (s % 4) % 4;
    even = r != 2 * s && half_rs_mod4 <= 1;
  } else {
    const std::uint64_t r8 = r % 8;
    const bool divides = (2 * r) % s == 0;
    even = divides ? (r8 == 1 || r8 == 7) : (r8 == 3 || r8 == 5);
  }
  return even ? Parity::Even : Parity::Odd;
}

// True when reducibility is forced without arithmetic: a perfect square
// (both exponents even) or an even factor count.
inline bool swan_rules_out(const Trinomial& t) {
  if (t.r % 2 == 0 && t.s % 2 == 0) return true;
  return factor_parity(t) == Parity::Even;
}

// The s in [1, r/2] that survive the filter, ascending.
inline auto surviving_s(std::uint64_t r) {
  if (r % 2 == 0) throw std::invalid_argument("surviving_s requires odd r");
  return std::views::iota(std::uint64_t{1}, r / 2 + 1) |
         std::views::filter([r](std::uint64_t s) { return !swan_rules_out({r, s}); });
}

inline std::uint64_t count_surviving_s(std::uint64_t r) {
  std::uint64_t n = 0;
  for ([[maybe_unused]] auto s : surviving_s(r)) ++n;
  return n;
}

}  // namespace trinoforge
