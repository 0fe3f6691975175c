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

#include "trinoforge/bench.hpp"

#include <gtest/gtest.h>

namespace trinoforge {
namespace {

BenchOptions quick(BenchOp op, std::uint64_t degree) {
  BenchOptions o;
  o.op = op;
  o.degree = degree;
  o.min_runs = 3;
  o.max_runs = 5;
  o.min_time = std::chrono::milliseconds(0);
  return o;
}

TEST(BenchTest, ParseAndFormat) {
  EXPECT_EQ(parse_bench_op("square"), BenchOp::square);
  EXPECT_EQ(parse_bench_op("modsquare"), BenchOp::modsquare);
  EXPECT_EQ(parse_bench_op("mul"), BenchOp::mul);
  EXPECT_FALSE(parse_bench_op("cube"));
  EXPECT_EQ(format_bench_line({BenchOp::square, 1000, 42, 5}), "bench square 1000 42");
}

TEST(BenchTest, RunsEveryOp) {
  for (BenchOp op : {BenchOp::square, BenchOp::modsquare, BenchOp::mul}) {
    const auto rep = bench(quick(op, 5000));
    EXPECT_EQ(rep.op, op);
    EXPECT_EQ(rep.degree, 5000u);
    EXPECT_GE(rep.runs, 3u);
    EXPECT_LE(rep.runs, 5u);
  }
}

TEST(BenchTest, RejectsDegenerateDegrees) {
  EXPECT_THROW(bench(quick(BenchOp::square, 0)), std::invalid_argument);
  EXPECT_THROW(bench(quick(BenchOp::square, kMaxBenchDegree + 1)), std::length_error);
}

TEST(BenchTest, RandomOperandHasExactDegree) {
  std::mt19937_64 rng(1);
  for (std::uint64_t d : {1u, 63u, 64u, 65u, 1000u})
    EXPECT_EQ(detail::random_poly_of_degree(d, rng).degree(), degree_t(d));
}

}  // namespace
}  // namespace trinoforge
