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

// Testing core for one trinomial T = x^r + x^s + 1 with r an odd prime.
//
// Sieve: u_d = x^(2^d) mod T by repeated modsquaring. gcd(u_d + x, T) is the
// product of the irreducible factors of T whose degree divides d, so the first
// d with a nontrivial gcd is the smallest factor degree and that gcd holds
// only factors of degree exactly d.
//
// Irreducibility: factors of x^(2^r) - x have degree 1 or r when r is prime,
// and a trinomial has no linear factor (T(0) = T(1) = 1). So T is irreducible
// iff x^(2^r) = x (mod T). When 2^r - 1 is prime every irreducible of degree r
// is primitive.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <type_traits>
#include <variant>

#include "trinoforge/poly.hpp"
#include "trinoforge/small_sieve.hpp"
#include "trinoforge/swan.hpp"
#include "trinoforge/trinomial.hpp"

namespace trinoforge {

// Mersenne prime exponents known to GIMPS, ascending.
inline constexpr std::array<std::uint64_t, 52> kMersenneExponents = {
    2,        3,        5,        7,        13,       17,       19,       31,       61,
    89,       107,      127,      521,      607,      1279,     2203,     2281,     3217,
    4253,     4423,     9689,     9941,     11213,    19937,    21701,    23209,    44497,
    86243,    110503,   132049,   216091,   756839,   859433,   1257787,  1398269,  2976221,
    3021377,  6972593,  13466917, 20996011, 24036583, 25964951, 30402457, 32582657, 37156667,
    42643801, 43112609, 57885161, 74207281, 77232917, 82589933, 136279841};

inline bool is_mersenne_exponent(std::uint64_t r) {
  return std::binary_search(kMersenneExponents.begin(), kMersenneExponents.end(), r);
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t p = 3; p <= n / p; p += 2)
    if (n % p == 0) return false;
  return true;
}

inline void require_odd_prime(std::uint64_t r) {
  if (r % 2 == 0 || !is_prime(r)) throw std::domain_error("test requires odd prime degree");
}

// Thrown out of long loops when a stop has been requested.
struct Cancelled : std::runtime_error {
  Cancelled() : std::runtime_error("cancelled") {}
};

inline void check_stop(const std::stop_token& stop) {
  if (stop.stop_requested()) throw Cancelled();
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t kDefaultSeed = 0x7472696e6f666f72ull;

// Per-trinomial RNG seed, so results do not depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t r, std::uint64_t s) {
  return splitmix64(splitmix64(base ^ splitmix64(r)) ^ s);
}

// ---------------------------------------------------------------------------

struct Factor {
  std::uint64_t d;
  Poly poly;
  friend bool operator==(const Factor&, const Factor&) = default;
};

struct SieveMode {
  std::uint64_t batch = 1;  // 1 = gcd after every squaring

  static SieveMode exact() { return {1}; }
  static SieveMode batched(std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("batch size must be positive");
    return {k};
  }
};

// Walks u_d = x^(2^d) mod T upward from d = 0 and looks for the first d with
// gcd(u_d + x, T) != 1.
class DenseSieve {
 public:
  struct Hit {
    std::uint64_t d;
    Poly gcd;
  };

  explicit DenseSieve(Trinomial t, SpreadMethod spread = default_spread())
      : ring_(t, spread), modulus_(dense(t)), x_(Poly::monomial(1)), u_(ring_.reduce(x_)) {}

  std::uint64_t position() const { return d_; }
  const Poly& current() const { return u_; }

  void advance(std::uint64_t steps, const std::stop_token& stop = {}) {
    for (std::uint64_t i = 0; i < steps; ++i) step(stop);
  }

  std::optional<Hit> scan_exact(std::uint64_t d_to, const std::stop_token& stop = {}) {
    while (d_ < d_to) {
      step(stop);
      Poly g = gcd(u_ + x_, modulus_);
      if (!g.is_one()) return Hit{d_, std::move(g)};
    }
    return std::nullopt;
  }

  // One gcd per block of k steps against the product of the u_d + x in the
  // block; a hit replays the block one step at a time to pin the exact d.
  std::optional<Hit> scan_batched(std::uint64_t d_to, std::uint64_t k,
                                  const std::stop_token& stop = {}) {
    if (k <= 1) return scan_exact(d_to, stop);
    while (d_ < d_to) {
      const std::uint64_t block_start = d_;
      const Poly snapshot = u_;
      const std::uint64_t block_end = std::min(d_to, d_ + k);
      Poly acc = Poly::one();
      while (d_ < block_end) {
        step(stop);
        acc = ring_.mulmod(acc, u_ + x_);
      }
      if (!gcd(acc, modulus_).is_one()) {
        d_ = block_start;
        u_ = snapshot;
        auto hit = scan_exact(block_end, stop);
        if (!hit) throw std::logic_error("batched sieve replay found no factor");
        return hit;
      }
    }
    return std::nullopt;
  }

  std::optional<Hit> scan(std::uint64_t d_to, SieveMode mode, const std::stop_token& stop = {}) {
    return scan_batched(d_to, mode.batch, stop);
  }

 private:
  void step(const std::stop_token& stop) {
    check_stop(stop);
    ring_.modsquare_in_place(u_);
    ++d_;
  }

  TrinomialRing ring_;
  Poly modulus_;
  Poly x_;
  Poly u_;
  std::uint64_t d_ = 0;
};

// ---------------------------------------------------------------------------

// Extracts one irreducible factor of degree d from g, a product of distinct
// irreducibles all of degree d, by trace-map splitting:
// Tr(h) = h + h^2 + ... + h^(2^(d-1)) mod g takes values in GF(2) on each
// factor, so gcd(Tr(h), g) splits g for about half of all h.
inline Poly equal_degree_split(const Poly& g, std::uint64_t d, std::uint64_t seed) {
  const degree_t n = g.degree();
  if (d == 0 || n <= 0) throw std::invalid_argument("equal_degree_split: degenerate input");
  if (std::uint64_t(n) % d != 0)
    throw std::invalid_argument("equal_degree_split: degree not a multiple of d");
  if (!gcd(g, derivative(g)).is_one())
    throw std::invalid_argument("equal_degree_split: factors not distinct");

  constexpr int kMaxAttempts = 256;
  std::mt19937_64 rng(seed);
  Poly cur = g;
  while (std::uint64_t(cur.degree()) > d) {
    const std::uint64_t bits = std::uint64_t(cur.degree());
    bool split = false;
    for (int attempt = 0; attempt < kMaxAttempts && !split; ++attempt) {
      std::vector<word_t> w(words_for_bits(bits));
      for (auto& v : w) v = rng();
      if (bits % kWordBits) w.back() &= (word_t(1) << (bits % kWordBits)) - 1;
      Poly h = Poly::adopt(std::move(w));

      Poly tr = h;
      Poly p = h;
      for (std::uint64_t i = 1; i < d; ++i) {
        p = mod(square(p), cur);
        tr += p;
      }
      Poly f = gcd(tr, cur);
      const degree_t df = f.degree();
      if (df > 0 && df < cur.degree()) {
        Poly other = divrem(cur, f).quotient;
        cur = df <= other.degree() ? std::move(f) : std::move(other);
        split = true;
      }
    }
    if (!split) throw std::runtime_error("equal_degree_split: no split found");
  }
  return cur;
}

inline bool is_irreducible(const Trinomial& t, const std::stop_token& stop = {}) {
  require_odd_prime(t.r);
  TrinomialRing ring(t);
  Poly u = ring.reduce(Poly::monomial(1));
  const Poly x = u;
  for (std::uint64_t i = 0; i < t.r; ++i) {
    check_stop(stop);
    ring.modsquare_in_place(u);
  }
  return u == x;
}

// Smallest-degree irreducible factor by the gcd sieve, or nothing when T is
// irreducible. Every reducible T has a factor of degree <= r/2.
inline std::optional<Factor> smallest_factor(const Trinomial& t, SieveMode mode = SieveMode::exact(),
                                             std::uint64_t seed = kDefaultSeed,
                                             const std::stop_token& stop = {}) {
  require_odd_prime(t.r);
  DenseSieve sieve(t);
  auto hit = sieve.scan(t.r / 2, mode, stop);
  if (!hit) return std::nullopt;
  return Factor{hit->d, equal_degree_split(hit->gcd, hit->d, derive_seed(seed, t.r, t.s))};
}

// ---------------------------------------------------------------------------

struct Primitive {
  friend bool operator==(const Primitive&, const Primitive&) = default;
};
struct Reducible {
  std::uint64_t d;
  Poly factor;
  friend bool operator==(const Reducible&, const Reducible&) = default;
};
struct RuledOutBySwan {
  friend bool operator==(const RuledOutBySwan&, const RuledOutBySwan&) = default;
};
// Irreducible, but r is not a known Mersenne exponent so primitivity is unproven.
struct IrreducibleButUncertifiedPrimitive {
  friend bool operator==(const IrreducibleButUncertifiedPrimitive&,
                         const IrreducibleButUncertifiedPrimitive&) = default;
};

using Verdict =
    std::variant<Primitive, Reducible, RuledOutBySwan, IrreducibleButUncertifiedPrimitive>;

inline std::string to_string(const Verdict& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Primitive>) {
          return "primitive";
        } else if constexpr (std::is_same_v<T, Reducible>) {
          return "reducible d=" + std::to_string(x.d) + " factor=" + x.factor.to_hex();
        } else if constexpr (std::is_same_v<T, RuledOutBySwan>) {
          return "ruled-out-by-swan";
        } else {
          return "irreducible (primitivity uncertified)";
        }
      },
      v);
}

inline bool is_irreducible_verdict(const Verdict& v) {
  return std::holds_alternative<Primitive>(v) ||
         std::holds_alternative<IrreducibleButUncertifiedPrimitive>(v);
}

struct ClassifyOptions {
  std::uint64_t dmax = 0;  // 0 selects max(64, 8 * ceil(log2 r))
  std::uint64_t batch = 64;
  std::uint64_t seed = kDefaultSeed;
  // Word-level sieve depth; unset selects 20 for r >= 2048 and 0 below.
  std::optional<unsigned> small_sieve_degree;
  // Above this degree dense gcds are skipped in favour of the plain
  // irreducibility test.
  std::uint64_t dense_gcd_limit = 100000;
};

inline std::uint64_t default_dmax(std::uint64_t r) {
  const std::uint64_t log2r = std::bit_width(r - 1);
  return std::max<std::uint64_t>(64, 8 * log2r);
}

inline constexpr std::uint64_t kSmallSieveMinDegree = 2048;
inline constexpr unsigned kDefaultSmallSieveDegree = 20;

// Classification pipeline for a fixed r. The word-level sieve tables are built
// once and shared; classify() itself keeps all mutable state on its own stack,
// so one Classifier may serve many threads.
class Classifier {
 public:
  explicit Classifier(std::uint64_t r, ClassifyOptions opts = {}) : r_(r), opts_(opts) {
    require_odd_prime(r);
    if (opts_.batch == 0) throw std::invalid_argument("batch size must be positive");
    dmax_ = std::min(opts_.dmax ? opts_.dmax : default_dmax(r), r / 2);
    const unsigned small = opts_.small_sieve_degree.value_or(
        r >= kSmallSieveMinDegree ? kDefaultSmallSieveDegree : 0);
    small_degree_ = unsigned(std::min<std::uint64_t>(small, dmax_));
    if (small_degree_ >= 2) small_ = std::make_shared<const SmallFactorSieve>(r, small_degree_);
  }

  std::uint64_t r() const { return r_; }
  std::uint64_t dmax() const { return dmax_; }
  unsigned small_sieve_degree() const { return small_degree_; }
  bool dense_gcd_enabled() const { return r_ <= opts_.dense_gcd_limit; }

  // Swan filter plus the sieves up to dmax. Nothing means the trinomial
  // survived and needs the full test.
  std::optional<Verdict> sieve(std::uint64_t s, const std::stop_token& stop = {}) const {
    const Trinomial t(r_, s);
    if (auto v = cheap_stages(t)) return v;
    if (!dense_gcd_enabled()) return std::nullopt;
    DenseSieve dense(t);
    dense.advance(small_degree_, stop);
    if (auto hit = dense.scan_exact(dmax_, stop)) return reducible(t, *hit);
    return std::nullopt;
  }

  Verdict classify(std::uint64_t s, const std::stop_token& stop = {}) const {
    const Trinomial t(r_, s);
    if (auto v = cheap_stages(t)) return *v;

    if (dense_gcd_enabled()) {
      DenseSieve dense(t);
      dense.advance(small_degree_, stop);
      if (auto hit = dense.scan_exact(dmax_, stop)) return reducible(t, *hit);
      if (auto hit = dense.scan_batched(r_ / 2, opts_.batch, stop)) return reducible(t, *hit);
      // No factor of degree <= r/2: irreducible. Cross-check x^(2^r) = x.
      dense.advance(r_ - dense.position(), stop);
      if (dense.current() != Poly::monomial(1))
        throw std::logic_error("sieve and irreducibility test disagree");
      return irreducible();
    }

    if (is_irreducible(t, stop)) return irreducible();
    DenseSieve dense(t);
    dense.advance(small_degree_, stop);
    auto hit = dense.scan_batched(r_ / 2, opts_.batch, stop);
    if (!hit) throw std::logic_error("reducible trinomial without a factor of degree <= r/2");
    return reducible(t, *hit);
  }

 private:
  std::optional<Verdict> cheap_stages(const Trinomial& t) const {
    if (swan_rules_out(t)) return RuledOutBySwan{};
    if (small_) {
      if (auto hit = small_->first_factor(t.s)) {
        const word_t f = hit->factor;
        return Reducible{hit->degree, Poly::from_words(std::span<const word_t>(&f, 1))};
      }
    }
    return std::nullopt;
  }

  Verdict reducible(const Trinomial& t, const DenseSieve::Hit& hit) const {
    return Reducible{hit.d, equal_degree_split(hit.gcd, hit.d, derive_seed(opts_.seed, t.r, t.s))};
  }

  Verdict irreducible() const {
    if (is_mersenne_exponent(r_)) return Primitive{};
    return IrreducibleButUncertifiedPrimitive{};
  }

  std::uint64_t r_;
  ClassifyOptions opts_;
  std::uint64_t dmax_ = 0;
  unsigned small_degree_ = 0;
  std::shared_ptr<const SmallFactorSieve> small_;
};

inline Verdict classify(const Trinomial& t, const ClassifyOptions& opts = {},
                        const std::stop_token& stop = {}) {
  return Classifier(t.r, opts).classify(t.s, stop);
}

}  // namespace trinoforge
