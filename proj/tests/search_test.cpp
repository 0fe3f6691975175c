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

#include "trinoforge/search.hpp"

#include <gtest/gtest.h>

#include <fstream>

#include "trinoforge/certificate.hpp"
#include "test_util.hpp"

namespace trinoforge {
namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Files {
  std::filesystem::path ckpt, certs;
  explicit Files(const std::string& tag)
      : ckpt(testing::temp_path(tag + ".ckpt")), certs(testing::temp_path(tag + ".certs")) {}
  SearchConfig config(std::uint64_t r, unsigned threads = 1) const {
    SearchConfig cfg;
    cfg.r = r;
    cfg.threads = threads;
    cfg.checkpoint = ckpt;
    cfg.certificates = certs;
    return cfg;
  }
};

TEST(SearchTest, SearchSpace) {
  EXPECT_EQ(search_space(31), 15u);
  EXPECT_EQ(search_space(74207281), 37103640u);
  EXPECT_EQ(search_space(7), 3u);
  EXPECT_THROW(search_space(2), std::invalid_argument);
}

TEST(SearchTest, ConfigValidation) {
  SearchConfig cfg;
  cfg.r = 29;  // prime, not a Mersenne exponent
  EXPECT_THROW(run_search(cfg), std::invalid_argument);
  cfg.r = 33;
  EXPECT_THROW(run_search(cfg), std::invalid_argument);
  cfg.r = 31;
  cfg.s_to = 16;
  EXPECT_THROW(run_search(cfg), std::invalid_argument);
  cfg.s_from = 5;
  cfg.s_to = 4;
  EXPECT_THROW(run_search(cfg), std::invalid_argument);
  cfg.s_to = 0;
  cfg.threads = 0;
  EXPECT_THROW(run_search(cfg), std::invalid_argument);
}

TEST(SearchTest, FindsPrimitivesInMemory) {
  SearchConfig cfg;
  cfg.r = 127;
  const auto res = run_search(cfg);
  EXPECT_EQ(res.primitives, (std::vector<std::uint64_t>{1, 7, 15, 30, 63}));
  EXPECT_TRUE(res.complete);
  EXPECT_TRUE(res.range_complete);
  EXPECT_FALSE(res.interrupted);
  EXPECT_EQ(res.newly_decided, 63u);
}

TEST(SearchTest, WritesCheckpointAndVerifiableCertificates) {
  Files f("search-files");
  const auto res = run_search(f.config(31));
  EXPECT_EQ(res.primitives, (std::vector<std::uint64_t>{3, 6, 7, 13}));
  EXPECT_EQ(slurp(f.ckpt),
            "trinoforge-ckpt 1 r=31\n1 R 3\n2 W\n3 P\n4 R 4\n5 R 2\n6 P\n7 P\n8 R 2\n9 R 3\n"
            "10 R 8\n11 R 2\n12 R 4\n13 P\n14 R 2\n15 R 3\n");
  const auto sum = verify_file(f.certs.string());
  EXPECT_TRUE(sum.ok());
  EXPECT_EQ(sum.accepted, 10u);
}

TEST(SearchTest, OutputIndependentOfThreadCount) {
  Files a("search-t1"), b("search-t4");
  run_search(a.config(127, 1));
  run_search(b.config(127, 4));
  EXPECT_EQ(slurp(a.ckpt), slurp(b.ckpt));
  EXPECT_EQ(slurp(a.certs), slurp(b.certs));
}

TEST(SearchTest, ResumeAfterLimitMatchesUninterruptedRun) {
  Files full("search-full"), part("search-part");
  run_search(full.config(127));

  auto cfg = part.config(127, 2);
  cfg.limit = 17;
  auto res = run_search(cfg);
  EXPECT_EQ(res.newly_decided, 17u);
  EXPECT_FALSE(res.complete);
  EXPECT_FALSE(res.interrupted);
  cfg.limit.reset();
  res = run_search(cfg);
  EXPECT_EQ(res.newly_decided, 63u - 17u);
  EXPECT_TRUE(res.complete);
  EXPECT_EQ(slurp(full.ckpt), slurp(part.ckpt));
  EXPECT_EQ(slurp(full.certs), slurp(part.certs));

  // A finished search has nothing left to do.
  res = run_search(cfg);
  EXPECT_EQ(res.newly_decided, 0u);
  EXPECT_EQ(slurp(full.ckpt), slurp(part.ckpt));
}

TEST(SearchTest, InterruptFlagStopsAndResumes) {
  Files full("search-int-full"), part("search-int");
  run_search(full.config(127));
  std::atomic<bool> flag{true};
  auto cfg = part.config(127);
  cfg.interrupt = &flag;
  auto res = run_search(cfg);
  EXPECT_TRUE(res.interrupted);
  EXPECT_FALSE(res.complete);
  flag = false;
  res = run_search(cfg);
  EXPECT_TRUE(res.complete);
  EXPECT_EQ(slurp(full.ckpt), slurp(part.ckpt));
  EXPECT_EQ(slurp(full.certs), slurp(part.certs));
}

TEST(SearchTest, TornCheckpointAndLostCertificateRecover) {
  Files full("search-torn-full"), part("search-torn");
  run_search(full.config(127));
  auto cfg = part.config(127);
  cfg.limit = 30;
  run_search(cfg);
  { std::ofstream(part.ckpt, std::ios::app | std::ios::binary) << "40 R"; }
  std::filesystem::remove(part.certs);
  std::vector<std::string> warnings;
  cfg.limit.reset();
  cfg.warn = [&](const std::string& w) { warnings.push_back(w); };
  run_search(cfg);
  EXPECT_FALSE(warnings.empty());
  EXPECT_EQ(slurp(full.ckpt), slurp(part.ckpt));
  EXPECT_EQ(slurp(full.certs), slurp(part.certs));
}

TEST(SearchTest, SubRange) {
  SearchConfig cfg;
  cfg.r = 127;
  cfg.s_from = 10;
  cfg.s_to = 20;
  const auto res = run_search(cfg);
  EXPECT_EQ(res.primitives, (std::vector<std::uint64_t>{15}));
  EXPECT_TRUE(res.range_complete);
  EXPECT_FALSE(res.complete);
  EXPECT_EQ(res.state.statuses.size(), 11u);
}

TEST(SearchTest, CheckpointForOtherDegreeIsRefused) {
  Files f("search-mismatch");
  run_search(f.config(31));
  auto cfg = f.config(127);
  EXPECT_THROW(run_search(cfg), CheckpointError);
}

}  // namespace
}  // namespace trinoforge
