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

// Small-degree factor sieve in single-word arithmetic.
//
// An irreducible f of degree d divides x^r + x^s + 1 iff x^s = x^r + 1 (mod f).
// Checking every irreducible of degree 2, 3, ... in turn finds the exact
// smallest factor degree with no arithmetic at the size of r. At large r this
// replaces the first steps of the gcd sieve, whose dense gcds cost O(r^2).

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "trinoforge/kernels.hpp"

namespace trinoforge {

inline constexpr unsigned kMaxSmallSieveDegree = 31;

namespace detail {

// Operands below 2^32, product below 2^63.
inline std::uint64_t clmul32(std::uint64_t a, std::uint64_t b) {
  std::uint64_t tab[16];
  tab[0] = 0;
  tab[1] = a;
  for (unsigned i = 2; i < 16; i += 2) {
    tab[i] = tab[i / 2] << 1;
    tab[i + 1] = tab[i] ^ a;
  }
  std::uint64_t r = 0;
  for (int shift = 28; shift >= 0; shift -= 4) r = (r << 4) ^ tab[(b >> shift) & 0xf];
  return r;
}

struct SmallModulus {
  std::uint64_t f;
  unsigned d;

  std::uint64_t reduce(std::uint64_t p) const {
    for (int top = 63 - std::countl_zero(p | 1); p && top >= int(d);
         top = 63 - std::countl_zero(p | 1))
      p ^= f << (top - int(d));
    return p;
  }
  std::uint64_t sqr(std::uint64_t a) const { return reduce(spread32_table(std::uint32_t(a))); }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return reduce(clmul32(a, b)); }
  std::uint64_t times_x(std::uint64_t a) const {
    a <<= 1;
    return (a >> d) & 1 ? a ^ f : a;
  }

  // x^e mod f, left to right.
  std::uint64_t x_pow(std::uint64_t e) const {
    std::uint64_t acc = 1;
    for (int bit = 63 - std::countl_zero(e | 1); bit >= 0; --bit) {
      acc = sqr(acc);
      if ((e >> bit) & 1) acc = times_x(acc);
    }
    return reduce(acc);
  }
};

inline std::uint64_t small_gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    const int db = 63 - std::countl_zero(b);
    for (int da = a ? 63 - std::countl_zero(a) : -1; da >= db; da = a ? 63 - std::countl_zero(a) : -1)
      a ^= b << (da - db);
    std::swap(a, b);
  }
  return a;
}

// Rabin's test: x^(2^d) = x mod f and gcd(x^(2^(d/p)) - x, f) = 1 for primes p | d.
inline bool small_irreducible(const SmallModulus& m) {
  std::vector<std::uint64_t> frob(m.d + 1);
  frob[0] = m.reduce(2);
  for (unsigned k = 1; k <= m.d; ++k) frob[k] = m.sqr(frob[k - 1]);
  if (frob[m.d] != frob[0]) return false;
  unsigned n = m.d;
  for (unsigned p = 2; p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    if (small_gcd(m.f, frob[m.d / p] ^ frob[0]) != 1) return false;
  }
  return true;
}

}  // namespace detail

class SmallFactorSieve {
 public:
  struct Hit {
    unsigned degree;
    std::uint64_t factor;
  };

  // Prepares every irreducible of degree 2..max_degree together with x^r mod f.
  SmallFactorSieve(std::uint64_t r, unsigned max_degree) : r_(r), max_degree_(max_degree) {
    if (max_degree > kMaxSmallSieveDegree)
      throw std::invalid_argument("small sieve degree too large");
    for (unsigned d = 2; d <= max_degree; ++d) {
      const std::uint64_t lo = std::uint64_t(1) << d;
      for (std::uint64_t f = lo | 1; f < (lo << 1); f += 2) {
        // Even weight means x + 1 divides f.
        if (std::popcount(f) % 2 == 0) continue;
        const detail::SmallModulus m{f, d};
        if (!detail::small_irreducible(m)) continue;
        entries_.push_back({m, m.x_pow(r) ^ 1});
      }
    }
  }

  std::uint64_t r() const { return r_; }
  unsigned max_degree() const { return max_degree_; }
  std::size_t size() const { return entries_.size(); }

  // The smallest-degree irreducible factor of x^r + x^s + 1 (smallest encoding
  // within that degree), or nothing if every factor has degree > max_degree.
  std::optional<Hit> first_factor(std::uint64_t s) const {
    for (const auto& e : entries_)
      if (e.m.x_pow(s) == e.target) return Hit{e.m.d, e.m.f};
    return std::nullopt;
  }

 private:
  struct Entry {
    detail::SmallModulus m;
    std::uint64_t target;  // x^r + 1 mod f
  };

  std::uint64_t r_;
  unsigned max_degree_;
  std::vector<Entry> entries_;
};

}  // namespace trinoforge
