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

// Dense polynomials over GF(2). Bit i of word k is the coefficient of x^(64k+i).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trinoforge/kernels.hpp"

namespace trinoforge {

using degree_t = std::int64_t;

// Degree of the zero polynomial; compares below every real degree.
inline constexpr degree_t kDegreeNegInf = std::numeric_limits<degree_t>::min();

inline constexpr std::size_t kDefaultKaratsubaThreshold = 40;

inline std::size_t words_for_bits(std::uint64_t bits) { return (bits + kWordBits - 1) / kWordBits; }

namespace detail {

inline degree_t degree_of(std::span<const word_t> w) {
  for (std::size_t k = w.size(); k-- > 0;)
    if (w[k]) return degree_t(k * kWordBits + (kWordBits - 1 - std::countl_zero(w[k])));
  return kDegreeNegInf;
}

// dst ^= src * x^shift. dst must be wide enough for every set bit of the result.
inline void xor_shifted(std::span<word_t> dst, std::span<const word_t> src, std::uint64_t shift) {
  const std::size_t ws = shift / kWordBits;
  const unsigned bs = shift % kWordBits;
  if (bs == 0) {
    for (std::size_t i = 0; i < src.size(); ++i) dst[ws + i] ^= src[i];
    return;
  }
  word_t carry = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[ws + i] ^= (src[i] << bs) | carry;
    carry = src[i] >> (kWordBits - bs);
  }
  if (carry) dst[ws + src.size()] ^= carry;
}

}  // namespace detail

class Poly {
 public:
  Poly() = default;

  // Takes ownership of a word vector and trims it to canonical form.
  static Poly adopt(std::vector<word_t> words) {
    Poly p;
    p.words_ = std::move(words);
    p.trim();
    return p;
  }

  static Poly from_words(std::span<const word_t> words) {
    return adopt(std::vector<word_t>(words.begin(), words.end()));
  }

  static Poly one() { return monomial(0); }

  static Poly monomial(std::uint64_t exponent) {
    std::vector<word_t> w(exponent / kWordBits + 1, 0);
    w.back() = word_t(1) << (exponent % kWordBits);
    return adopt(std::move(w));
  }

  // Sum of x^e over the listed exponents; repeated exponents cancel.
  static Poly from_exponents(std::initializer_list<std::uint64_t> exps) {
    return from_exponents(std::span<const std::uint64_t>(exps.begin(), exps.size()));
  }
  static Poly from_exponents(std::span<const std::uint64_t> exps) {
    std::uint64_t top = 0;
    for (auto e : exps) top = std::max(top, e);
    std::vector<word_t> w(exps.empty() ? 0 : top / kWordBits + 1, 0);
    for (auto e : exps) w[e / kWordBits] ^= word_t(1) << (e % kWordBits);
    return adopt(std::move(w));
  }

  // Lowercase hex of sum c_i 2^i, no leading zeros; "0" for zero.
  static Poly from_hex(std::string_view hex) {
    if (hex.empty()) throw std::invalid_argument("empty hex string");
    if (hex.size() > 1 && hex.front() == '0') throw std::invalid_argument("leading zero in hex");
    std::vector<word_t> w((hex.size() + 15) / 16, 0);
    for (std::size_t i = 0; i < hex.size(); ++i) {
      const char c = hex[hex.size() - 1 - i];
      word_t v;
      if (c >= '0' && c <= '9')
        v = word_t(c - '0');
      else if (c >= 'a' && c <= 'f')
        v = word_t(c - 'a' + 10);
      else
        throw std::invalid_argument("invalid hex digit");
      w[i / 16] |= v << (4 * (i % 16));
    }
    return adopt(std::move(w));
  }

  std::string to_hex() const {
    if (is_zero()) return "0";
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t nibbles = std::size_t(degree() / 4 + 1);
    std::string s(nibbles, '0');
    for (std::size_t i = 0; i < nibbles; ++i)
      s[nibbles - 1 - i] = kDigits[(words_[i / 16] >> (4 * (i % 16))) & 0xf];
    return s;
  }

  bool is_zero() const { return words_.empty(); }
  bool is_one() const { return words_.size() == 1 && words_[0] == 1; }
  degree_t degree() const { return detail::degree_of(words_); }

  bool coefficient(std::uint64_t i) const {
    const std::size_t k = i / kWordBits;
    return k < words_.size() && ((words_[k] >> (i % kWordBits)) & 1);
  }

  std::span<const word_t> words() const { return words_; }
  std::size_t word_count() const { return words_.size(); }

  std::vector<word_t> release() && { return std::move(words_); }

  Poly& operator+=(const Poly& other) {
    if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
    for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] ^= other.words_[i];
    trim();
    return *this;
  }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<word_t> words_;
};

inline Poly add(const Poly& a, const Poly& b) {
  Poly r = a;
  r += b;
  return r;
}

inline Poly operator+(const Poly& a, const Poly& b) { return add(a, b); }

inline Poly shift_left(const Poly& a, std::uint64_t n) {
  if (a.is_zero()) return a;
  std::vector<word_t> w(a.word_count() + n / kWordBits + 1, 0);
  detail::xor_shifted(w, a.words(), n);
  return Poly::adopt(std::move(w));
}

// Formal derivative: odd-indexed coefficients move down one place.
inline Poly derivative(const Poly& a) {
  std::vector<word_t> w(a.words().begin(), a.words().end());
  for (auto& v : w) v = (v & 0xaaaaaaaaaaaaaaaaull) >> 1;
  return Poly::adopt(std::move(w));
}

// ---------------------------------------------------------------------------
// Squaring

// out must hold 2 * in.size() words.
inline void square_words(std::span<const word_t> in, std::span<word_t> out,
                         SpreadMethod method = default_spread()) {
  spread_words(in.data(), in.size(), out.data(), method);
}

inline Poly square(const Poly& a, SpreadMethod method) {
  require(method);
  std::vector<word_t> w(2 * a.word_count());
  square_words(a.words(), w, method);
  return Poly::adopt(std::move(w));
}

inline Poly square(const Poly& a) { return square(a, default_spread()); }

// ---------------------------------------------------------------------------
// Multiplication

namespace detail {

struct MulContext {
  ClmulMethod method;
  std::size_t threshold;
};

inline std::size_t karatsuba_scratch(std::size_t n, std::size_t threshold) {
  std::size_t total = 0;
  while (n >= threshold && n >= 2) {
    const std::size_t hi = n - n / 2;
    total += 4 * hi;
    n = hi;
  }
  return total;
}

// Equal-length product; out holds 2n words, scratch holds karatsuba_scratch(n).
inline void karatsuba(const word_t* a, const word_t* b, std::size_t n, word_t* out,
                      word_t* scratch, const MulContext& ctx) {
  if (n < ctx.threshold || n < 2) {
    mul_basecase(a, n, b, n, out, ctx.method);
    return;
  }
  const std::size_t lo = n / 2;
  const std::size_t hi = n - lo;
  word_t* sa = scratch;
  word_t* sb = scratch + hi;
  word_t* mid = scratch + 2 * hi;
  word_t* next = scratch + 4 * hi;

  // out[0, 2lo) = a0*b0, out[2lo, 2n) = a1*b1.
  karatsuba(a, b, lo, out, next, ctx);
  karatsuba(a + lo, b + lo, hi, out + 2 * lo, next, ctx);

  // (a0 + a1)(b0 + b1) - z0 - z2, with the shorter low halves zero-padded.
  for (std::size_t i = 0; i < hi; ++i) {
    sa[i] = a[lo + i] ^ (i < lo ? a[i] : 0);
    sb[i] = b[lo + i] ^ (i < lo ? b[i] : 0);
  }
  karatsuba(sa, sb, hi, mid, next, ctx);
  for (std::size_t i = 0; i < 2 * lo; ++i) mid[i] ^= out[i];
  for (std::size_t i = 0; i < 2 * hi; ++i) mid[i] ^= out[2 * lo + i];
  for (std::size_t i = 0; i < 2 * hi; ++i) out[lo + i] ^= mid[i];
}

// General product; out holds n + m words (overwritten).
inline void mul_words(const word_t* a, std::size_t n, const word_t* b, std::size_t m, word_t* out,
                      const MulContext& ctx) {
  if (n < m) {
    std::swap(a, b);
    std::swap(n, m);
  }
  if (m == 0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = 0;
    return;
  }
  if (m < ctx.threshold) {
    mul_basecase(a, n, b, m, out, ctx.method);
    return;
  }
  std::vector<word_t> scratch(karatsuba_scratch(m, ctx.threshold));
  if (n == m) {
    karatsuba(a, b, n, out, scratch.data(), ctx);
    return;
  }
  for (std::size_t i = 0; i < n + m; ++i) out[i] = 0;
  std::vector<word_t> part(2 * m);
  std::size_t off = 0;
  for (; off + m <= n; off += m) {
    karatsuba(a + off, b, m, part.data(), scratch.data(), ctx);
    for (std::size_t i = 0; i < 2 * m; ++i) out[off + i] ^= part[i];
  }
  if (off < n) {
    const std::size_t rest = n - off;
    mul_words(a + off, rest, b, m, part.data(), ctx);
    for (std::size_t i = 0; i < rest + m; ++i) out[off + i] ^= part[i];
  }
}

}  // namespace detail

inline Poly mul(const Poly& a, const Poly& b, ClmulMethod method,
                std::size_t karatsuba_threshold = kDefaultKaratsubaThreshold) {
  require(method);
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<word_t> w(a.word_count() + b.word_count());
  detail::mul_words(a.words().data(), a.word_count(), b.words().data(), b.word_count(), w.data(),
                    {method, std::max<std::size_t>(karatsuba_threshold, 1)});
  return Poly::adopt(std::move(w));
}

inline Poly mul(const Poly& a, const Poly& b) { return mul(a, b, default_clmul()); }

inline Poly mul_schoolbook(const Poly& a, const Poly& b, ClmulMethod method = default_clmul()) {
  return mul(a, b, method, std::numeric_limits<std::size_t>::max());
}

inline Poly operator*(const Poly& a, const Poly& b) { return mul(a, b); }

// ---------------------------------------------------------------------------
// Division and gcd

struct DivRem {
  Poly quotient;
  Poly remainder;
};

namespace detail {

// Reduces rem modulo b in place, optionally recording quotient bits.
inline void reduce_in_place(std::vector<word_t>& rem, std::span<const word_t> b,
                            std::vector<word_t>* quotient) {
  const degree_t db = degree_of(b);
  degree_t top = degree_of(rem);
  if (quotient) quotient->assign(top >= db ? std::size_t(top - db) / kWordBits + 1 : 0, 0);
  while (top >= db) {
    const std::uint64_t shift = std::uint64_t(top - db);
    if (quotient) (*quotient)[shift / kWordBits] |= word_t(1) << (shift % kWordBits);
    xor_shifted(rem, b, shift);
    std::size_t k = std::size_t(top) / kWordBits + 1;
    while (k > 0 && rem[k - 1] == 0) --k;
    top = k == 0 ? kDegreeNegInf
                 : degree_t((k - 1) * kWordBits + (kWordBits - 1 - std::countl_zero(rem[k - 1])));
  }
}

}  // namespace detail

inline DivRem divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("zero divisor");
  std::vector<word_t> rem(a.words().begin(), a.words().end());
  rem.resize(std::max(rem.size(), b.word_count()) + 1, 0);
  std::vector<word_t> q;
  detail::reduce_in_place(rem, b.words(), &q);
  return {Poly::adopt(std::move(q)), Poly::adopt(std::move(rem))};
}

inline Poly mod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("zero divisor");
  std::vector<word_t> rem(a.words().begin(), a.words().end());
  rem.resize(std::max(rem.size(), b.word_count()) + 1, 0);
  detail::reduce_in_place(rem, b.words(), nullptr);
  return Poly::adopt(std::move(rem));
}

// Iterative Euclid on dense operands.
inline Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw std::domain_error("undefined gcd");
  std::vector<word_t> x(a.words().begin(), a.words().end());
  std::vector<word_t> y(b.words().begin(), b.words().end());
  const std::size_t width = std::max(x.size(), y.size()) + 1;
  x.resize(width, 0);
  y.resize(width, 0);
  if (detail::degree_of(x) < detail::degree_of(y)) std::swap(x, y);
  while (detail::degree_of(y) != kDegreeNegInf) {
    std::size_t yn = y.size();
    while (yn > 0 && y[yn - 1] == 0) --yn;
    detail::reduce_in_place(x, std::span<const word_t>(y.data(), yn), nullptr);
    std::swap(x, y);
  }
  return Poly::adopt(std::move(x));
}

}  // namespace trinoforge
