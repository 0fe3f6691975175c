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

// Median-of-runs timing for the arithmetic hot spots.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trinoforge/factor_engine.hpp"
#include "trinoforge/poly.hpp"
#include "trinoforge/trinomial.hpp"

namespace trinoforge {

enum class BenchOp { square, modsquare, mul };

inline std::string_view name(BenchOp op) {
  switch (op) {
    case BenchOp::square: return "square";
    case BenchOp::modsquare: return "modsquare";
    case BenchOp::mul: return "mul";
  }
  return "?";
}

inline std::optional<BenchOp> parse_bench_op(std::string_view s) {
  if (s == "square") return BenchOp::square;
  if (s == "modsquare") return BenchOp::modsquare;
  if (s == "mul") return BenchOp::mul;
  return std::nullopt;
}

// Largest degree the bench will allocate for (about 256 MiB per operand).
inline constexpr std::uint64_t kMaxBenchDegree = std::uint64_t(1) << 31;

struct BenchOptions {
  BenchOp op = BenchOp::square;
  std::uint64_t degree = 0;
  SpreadMethod spread = default_spread();
  ClmulMethod clmul = default_clmul();
  unsigned min_runs = 5;
  unsigned max_runs = 1000;
  std::chrono::milliseconds min_time{500};
  std::uint64_t seed = 1;
};

struct BenchReport {
  BenchOp op;
  std::uint64_t degree;
  std::uint64_t median_ns;
  unsigned runs;
};

inline std::string format_bench_line(const BenchReport& r) {
  return "bench " + std::string(name(r.op)) + ' ' + std::to_string(r.degree) + ' ' +
         std::to_string(r.median_ns);
}

namespace detail {

inline Poly random_poly_of_degree(std::uint64_t degree, std::mt19937_64& rng) {
  std::vector<word_t> w(degree / kWordBits + 1);
  for (auto& v : w) v = rng();
  const unsigned top = degree % kWordBits;
  w.back() &= top == 63 ? ~word_t(0) : (word_t(1) << (top + 1)) - 1;
  w.back() |= word_t(1) << top;
  return Poly::adopt(std::move(w));
}

template <class Fn>
BenchReport time_runs(const BenchOptions& opt, Fn&& fn) {
  using clock = std::chrono::steady_clock;
  std::vector<std::uint64_t> samples;
  const auto begin = clock::now();
  while (samples.size() < opt.max_runs &&
         (samples.size() < opt.min_runs || clock::now() - begin < opt.min_time)) {
    const auto t0 = clock::now();
    fn();
    const auto t1 = clock::now();
    samples.push_back(std::uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
  }
  std::sort(samples.begin(), samples.end());
  return {opt.op, opt.degree, samples[samples.size() / 2], unsigned(samples.size())};
}

// Middle exponent for the modsquare bench: a known primitive trinomial when
// one is on record for r, otherwise s = floor(r/3).
inline std::uint64_t bench_middle_exponent(std::uint64_t r) {
  if (r == 74207281) return 9156813;
  if (r == 43112609) return 3569337;
  if (r == 42643801) return 55981;
  return std::max<std::uint64_t>(1, r / 3);
}

}  // namespace detail

inline BenchReport bench(const BenchOptions& opt) {
  if (opt.degree == 0) throw std::invalid_argument("degenerate bench: degree must be positive");
  if (opt.degree > kMaxBenchDegree) throw std::length_error("bench degree exceeds memory guard");
  std::mt19937_64 rng(opt.seed);

  switch (opt.op) {
    case BenchOp::square: {
      require(opt.spread);
      const Poly a = detail::random_poly_of_degree(opt.degree, rng);
      std::vector<word_t> out(2 * a.word_count());
      return detail::time_runs(opt, [&] { square_words(a.words(), out, opt.spread); });
    }
    case BenchOp::modsquare: {
      const std::uint64_t r = opt.degree + 1;
      TrinomialRing ring({r, detail::bench_middle_exponent(r)}, opt.spread);
      Poly a = detail::random_poly_of_degree(opt.degree, rng);
      ring.modsquare_in_place(a);  // warm the scratch buffer
      return detail::time_runs(opt, [&] { ring.modsquare_in_place(a); });
    }
    case BenchOp::mul: {
      require(opt.clmul);
      const Poly a = detail::random_poly_of_degree(opt.degree, rng);
      const Poly b = detail::random_poly_of_degree(opt.degree, rng);
      Poly c;
      return detail::time_runs(opt, [&] { c = mul(a, b, opt.clmul); });
    }
  }
  throw std::invalid_argument("unknown bench op");
}

}  // namespace trinoforge
