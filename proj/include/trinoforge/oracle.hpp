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

// Brute-force reference for small polynomials: exhaustive enumeration of
// irreducibles and trial-division factorization. Polynomials are plain 64-bit
// integers (bit i = coefficient of x^i). Nothing here touches the search
// arithmetic, so its answers can be used to check that arithmetic.

#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trinoforge/poly.hpp"

namespace trinoforge::oracle {

using small_poly = std::uint64_t;

inline constexpr unsigned kMaxEnumerateDegree = 24;
inline constexpr unsigned kMaxFactorDegree = 48;

inline int degree(small_poly p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

// Bit-serial product; the caller keeps deg(a) + deg(b) < 64.
inline small_poly multiply(small_poly a, small_poly b) {
  small_poly r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

inline std::pair<small_poly, small_poly> divide(small_poly a, small_poly b) {
  if (b == 0) throw std::domain_error("zero divisor");
  const int db = degree(b);
  small_poly q = 0;
  for (int da = degree(a); da >= db; da = degree(a)) {
    q |= small_poly(1) << (da - db);
    a ^= b << (da - db);
  }
  return {q, a};
}

namespace detail {

struct IrreducibleCache {
  std::mutex mu;
  std::map<unsigned, std::vector<small_poly>> by_degree;
};

inline IrreducibleCache& cache() {
  static IrreducibleCache c;
  return c;
}

}  // namespace detail

// All irreducible polynomials of degree exactly d, ascending.
inline std::vector<small_poly> enumerate_irreducibles(unsigned d) {
  if (d < 1 || d > kMaxEnumerateDegree)
    throw std::out_of_range("enumerate_irreducibles: degree out of range");
  {
    auto& c = detail::cache();
    std::lock_guard lock(c.mu);
    if (auto it = c.by_degree.find(d); it != c.by_degree.end()) return it->second;
  }
  std::vector<std::vector<small_poly>> lower;
  for (unsigned e = 1; 2 * e <= d; ++e) lower.push_back(enumerate_irreducibles(e));

  std::vector<small_poly> out;
  const small_poly lo = small_poly(1) << d;
  for (small_poly p = lo; p < (lo << 1); ++p) {
    bool irreducible = true;
    for (const auto& level : lower) {
      for (small_poly f : level) {
        if (divide(p, f).second == 0) {
          irreducible = false;
          break;
        }
      }
      if (!irreducible) break;
    }
    if (irreducible) out.push_back(p);
  }

  auto& c = detail::cache();
  std::lock_guard lock(c.mu);
  c.by_degree.emplace(d, out);
  return out;
}

// Necklace count (1/d) sum_{e|d} mu(e) 2^(d/e).
inline std::uint64_t necklace_count(unsigned d) {
  auto mobius = [](unsigned n) {
    int m = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
    return n > 1 ? -m : m;
  };
  std::int64_t sum = 0;
  for (unsigned e = 1; e <= d; ++e)
    if (d % e == 0) sum += mobius(e) * (std::int64_t(1) << (d / e));
  return std::uint64_t(sum) / d;
}

struct Factor {
  small_poly poly;
  unsigned multiplicity;
  friend bool operator==(const Factor&, const Factor&) = default;
};

using FactorMultiset = std::vector<Factor>;

// Trial division by irreducibles in ascending degree, then the cofactor.
// Output is ordered by (degree, encoding).
inline FactorMultiset factorize_small(small_poly p) {
  if (p == 0) throw std::invalid_argument("factorize_small: zero polynomial");
  const int dp = degree(p);
  if (dp < 1 || dp > int(kMaxFactorDegree))
    throw std::out_of_range("factorize_small: degree out of range");

  FactorMultiset out;
  for (unsigned d = 1; 2 * int(d) <= degree(p); ++d) {
    for (small_poly f : enumerate_irreducibles(d)) {
      unsigned m = 0;
      for (;;) {
        auto [q, rem] = divide(p, f);
        if (rem != 0) break;
        p = q;
        ++m;
      }
      if (m) out.push_back({f, m});
    }
  }
  if (p != 1) out.push_back({p, 1});
  return out;
}

inline small_poly product(const FactorMultiset& fs) {
  small_poly r = 1;
  for (const auto& f : fs)
    for (unsigned i = 0; i < f.multiplicity; ++i) r = multiply(r, f.poly);
  return r;
}

inline bool is_irreducible(small_poly p) {
  const auto fs = factorize_small(p);
  return fs.size() == 1 && fs[0].multiplicity == 1;
}

// Degree of the smallest irreducible factor, and the smallest such factor.
inline std::pair<unsigned, small_poly> smallest_factor(small_poly p) {
  const auto fs = factorize_small(p);
  return {unsigned(degree(fs.front().poly)), fs.front().poly};
}

inline small_poly trinomial(unsigned r, unsigned s) {
  if (r > kMaxFactorDegree) throw std::out_of_range("oracle trinomial degree out of range");
  return (small_poly(1) << r) | (small_poly(1) << s) | 1;
}

inline Poly to_poly(small_poly p) { return Poly::from_words(std::span<const word_t>(&p, 1)); }

inline small_poly from_poly(const Poly& p) {
  if (p.word_count() > 1) throw std::out_of_range("polynomial too large for the oracle");
  return p.is_zero() ? 0 : p.words()[0];
}

}  // namespace trinoforge::oracle
