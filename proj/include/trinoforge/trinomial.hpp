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

// Arithmetic modulo T = x^r + x^s + 1 without ever dividing by a dense T.

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trinoforge/poly.hpp"

namespace trinoforge {

struct Trinomial {
  std::uint64_t r = 0;
  std::uint64_t s = 0;

  Trinomial() = default;
  Trinomial(std::uint64_t r_, std::uint64_t s_) : r(r_), s(s_) {
    if (s == 0 || s >= r) throw std::invalid_argument("trinomial requires 0 < s < r");
  }

  Trinomial reciprocal() const { return {r, r - s}; }

  friend bool operator==(const Trinomial&, const Trinomial&) = default;
};

inline std::string to_string(const Trinomial& t) {
  return "x^" + std::to_string(t.r) + " + x^" + std::to_string(t.s) + " + 1";
}

inline Poly dense(const Trinomial& t) { return Poly::from_exponents({t.r, t.s, 0}); }

namespace detail {

// w ^= chunk * x^pos, where chunk's bits all land inside w.
inline void xor_word_at(std::span<word_t> w, word_t chunk, std::uint64_t pos) {
  const std::size_t i = pos / kWordBits;
  const unsigned b = pos % kWordBits;
  w[i] ^= chunk << b;
  if (b != 0) {
    const word_t spill = chunk >> (kWordBits - b);
    if (spill) w[i + 1] ^= spill;
  }
}

// Folds every bit at or above r back below r using x^r = x^s + 1.
// Works a word at a time from the top; repeats when r - s < 64 lets a fold
// land back above r.
inline void fold_trinomial(std::span<word_t> w, std::uint64_t r, std::uint64_t s) {
  const std::size_t kb = r / kWordBits;
  const unsigned rb = r % kWordBits;
  const std::uint64_t gap = r - s;
  if (w.size() <= kb) return;
  for (;;) {
    std::size_t top = w.size();
    while (top > kb && w[top - 1] == 0) --top;
    if (top <= kb) return;
    if (top == kb + 1 && rb != 0 && (w[kb] >> rb) == 0) return;
    std::size_t k = top;
    if (gap >= kWordBits) {
      // Whole words above r: every target lies strictly below the source word,
      // so shifts are fixed per pass.
      const std::size_t qg = gap / kWordBits, qr = r / kWordBits;
      const unsigned bg = gap % kWordBits, br = r % kWordBits;
      for (; k > kb + 1; --k) {
        const std::size_t i = k - 1;
        const word_t c = w[i];
        w[i] = 0;
        if (bg == 0) {
          w[i - qg] ^= c;
        } else {
          w[i - qg - 1] ^= c << (kWordBits - bg);
          w[i - qg] ^= c >> bg;
        }
        if (br == 0) {
          w[i - qr] ^= c;
        } else {
          w[i - qr - 1] ^= c << (kWordBits - br);
          w[i - qr] ^= c >> br;
        }
      }
    }
    while (k-- > kb) {
      word_t chunk;
      std::uint64_t start;
      if (k > kb || rb == 0) {
        chunk = w[k];
        start = std::uint64_t(k) * kWordBits;
        w[k] = 0;
      } else {
        chunk = w[k] >> rb;
        start = r;
        w[k] &= (word_t(1) << rb) - 1;
      }
      if (chunk == 0) continue;
      xor_word_at(w, chunk, start - gap);
      xor_word_at(w, chunk, start - r);
    }
  }
}

}  // namespace detail

// Modular arithmetic for one trinomial. Holds a squaring buffer that is reused
// across calls, so an instance belongs to one thread.
class TrinomialRing {
 public:
  explicit TrinomialRing(Trinomial t, SpreadMethod spread = default_spread())
      : t_(t), words_(words_for_bits(t.r)), spread_(spread) {
    require(spread);
  }

  const Trinomial& trinomial() const { return t_; }
  std::size_t words() const { return words_; }

  Poly reduce(const Poly& p) const {
    std::vector<word_t> w(p.words().begin(), p.words().end());
    detail::fold_trinomial(w, t_.r, t_.s);
    return Poly::adopt(std::move(w));
  }

  void modsquare_in_place(Poly& a) {
    if (a.degree() >= degree_t(t_.r)) throw std::domain_error("operand not reduced");
    std::vector<word_t> in = std::move(a).release();
    scratch_.resize(2 * words_);
    square_words(in, std::span<word_t>(scratch_.data(), 2 * in.size()), spread_);
    std::fill(scratch_.begin() + std::ptrdiff_t(2 * in.size()), scratch_.end(), 0);
    detail::fold_trinomial(scratch_, t_.r, t_.s);
    scratch_.resize(words_);
    std::swap(in, scratch_);
    a = Poly::adopt(std::move(in));
  }

  Poly modsquare(const Poly& a) {
    Poly r = a;
    modsquare_in_place(r);
    return r;
  }

  Poly mulmod(const Poly& a, const Poly& b) const { return reduce(mul(a, b)); }

  // x^(2^d) mod T by d successive modsquares starting from x.
  Poly x_pow_2exp(std::uint64_t d) {
    Poly u = reduce(Poly::monomial(1));
    for (std::uint64_t i = 0; i < d; ++i) modsquare_in_place(u);
    return u;
  }

 private:
  Trinomial t_;
  std::size_t words_;
  SpreadMethod spread_;
  std::vector<word_t> scratch_;
};

inline Poly reduce(const Poly& p, const Trinomial& t) { return TrinomialRing(t).reduce(p); }

inline Poly modsquare(const Poly& a, const Trinomial& t) { return TrinomialRing(t).modsquare(a); }

inline Poly x_pow_2exp(std::uint64_t d, const Trinomial& t) {
  return TrinomialRing(t).x_pow_2exp(d);
}

}  // namespace trinoforge
