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

#include "trinoforge/certificate.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "trinoforge/factor_engine.hpp"
#include "test_util.hpp"

namespace trinoforge {
namespace {

void write(const std::filesystem::path& p, const std::string& content) {
  std::ofstream(p, std::ios::binary) << content;
}

TEST(CertificateTest, FrozenExamples) {
  EXPECT_TRUE(verify("13 1 5 3b").accepted());
  EXPECT_TRUE(verify("13 4 2 7").accepted() == false);
  EXPECT_TRUE(verify("5 1 2 7").accepted());
  EXPECT_TRUE(verify("5 1 3 d").accepted());
  const auto nd = verify("5 1 3 b");
  ASSERT_FALSE(nd.accepted());
  EXPECT_EQ(*nd.reject, RejectReason::non_divisor);
  EXPECT_EQ(*verify("5 4 3 d").reject, RejectReason::range);  // s > r/2
  EXPECT_EQ(*verify("5 2 2 7").reject, RejectReason::non_divisor);
  EXPECT_EQ(emit({5, 1}, 2, Poly::from_hex("7")), "5 1 2 7");
  const auto nd2 = verify("13 1 3 b");
  ASSERT_FALSE(nd2.accepted());
  EXPECT_EQ(*nd2.reject, RejectReason::non_divisor);
}

TEST(CertificateTest, RejectReasons) {
  auto reason = [](std::string_view line) { return *verify(line).reject; };
  EXPECT_EQ(reason(""), RejectReason::parse);
  EXPECT_EQ(reason("13 1 5"), RejectReason::parse);
  EXPECT_EQ(reason("13 1 5 3b "), RejectReason::parse);
  EXPECT_EQ(reason("13  1 5 3b"), RejectReason::parse);
  EXPECT_EQ(reason("13 1 5 3B"), RejectReason::parse);
  EXPECT_EQ(reason("13 01 5 3b"), RejectReason::parse);
  EXPECT_EQ(reason("13 1 5 03b"), RejectReason::parse);
  EXPECT_EQ(reason("13 -1 5 3b"), RejectReason::parse);
  EXPECT_EQ(reason("99999999999999999999 1 5 3b"), RejectReason::parse);
  EXPECT_EQ(reason("13 0 5 3b"), RejectReason::range);
  EXPECT_EQ(reason("13 7 5 3b"), RejectReason::range);
  EXPECT_EQ(reason("13 1 0 1"), RejectReason::range);
  EXPECT_EQ(reason("13 1 13 2003"), RejectReason::range);
  EXPECT_EQ(reason("13 1 4 3b"), RejectReason::degree_mismatch);
  EXPECT_EQ(reason("13 1 5 3d"), RejectReason::non_divisor);
  EXPECT_EQ(name(RejectReason::non_divisor), "non-divisor");
}

TEST(CertificateTest, EmitValidatesShape) {
  EXPECT_EQ(emit({13, 1}, 5, Poly::from_hex("3b")), "13 1 5 3b");
  EXPECT_THROW(emit({13, 1}, 5, Poly()), std::invalid_argument);
  EXPECT_THROW(emit({13, 1}, 4, Poly::from_hex("3b")), std::invalid_argument);
  EXPECT_THROW(emit({13, 1}, 13, Poly::from_hex("3b")), std::invalid_argument);
}

TEST(CertificateTest, AllReducibleAtThirtyOne) {
  const auto p = testing::temp_path("certs31");
  std::string content;
  for (std::uint64_t s = 1; s <= 15; ++s)
    if (const auto f = smallest_factor({31, s})) content += emit({31, s}, f->d, f->poly) + '\n';
  write(p, content);
  const auto sum = verify_file(p.string());
  EXPECT_EQ(sum.accepted, 11u);
  EXPECT_EQ(sum.rejected, 0u);
}

// Every reducible trinomial with s <= r/2 emits a certificate that verifies,
// and flipping any single bit of the line is rejected.
TEST(CertificateTest, RoundTripAndMutation) {
  std::vector<std::string> corpus;
  for (std::uint64_t r : {13u, 31u, 61u}) {
    const Classifier c(r);
    for (std::uint64_t s = 1; s <= r / 2; ++s) {
      const auto f = smallest_factor({r, s});
      if (!f) continue;
      const std::string line = emit({r, s}, f->d, f->poly);
      EXPECT_TRUE(verify(line).accepted()) << line;
      corpus.push_back(line);
    }
  }
  ASSERT_FALSE(corpus.empty());
  std::mt19937_64 rng(41);
  int rejected = 0;
  for (int i = 0; i < 100; ++i) {
    std::string line = corpus[rng() % corpus.size()];
    const std::size_t pos = rng() % line.size();
    line[pos] = char(line[pos] ^ (1 << (rng() % 8)));
    rejected += !verify(line).accepted();
  }
  EXPECT_EQ(rejected, 100);
}

// A single bit flip in any position of any certificate is never accepted,
// checked exhaustively over a small corpus.
TEST(CertificateTest, EverySingleBitFlipRejected) {
  for (const std::string base : {"13 1 5 3b", "31 10 8 1f5", "31 2 2 7"}) {
    ASSERT_TRUE(verify(base).accepted());
    for (std::size_t pos = 0; pos < base.size(); ++pos)
      for (int bit = 0; bit < 8; ++bit) {
        std::string m = base;
        m[pos] = char(m[pos] ^ (1 << bit));
        EXPECT_FALSE(verify(m).accepted()) << base << " pos " << pos << " bit " << bit;
      }
  }
}

TEST(CertificateTest, VerifyFile) {
  const auto p = testing::temp_path("certs");
  write(p, "# comment\n13 1 5 3b\n5 1 2 7\n");
  auto sum = verify_file(p.string());
  EXPECT_TRUE(sum.ok());
  EXPECT_EQ(sum.accepted, 2u);

  write(p, "13 1 5 3b\n13 1 5 3d\n5 1 3 b\n");
  sum = verify_file(p.string());
  EXPECT_FALSE(sum.ok());
  EXPECT_EQ(sum.accepted, 1u);
  EXPECT_EQ(sum.rejected, 2u);
  EXPECT_EQ(*sum.first_rejected_line, 2u);
  EXPECT_EQ(*sum.first_reason, RejectReason::non_divisor);

  write(p, "13 1 5 3b");
  sum = verify_file(p.string());
  EXPECT_EQ(sum.rejected, 1u);
  EXPECT_EQ(*sum.first_reason, RejectReason::parse);

  write(p, "");
  EXPECT_TRUE(verify_file(p.string()).ok());

  std::filesystem::remove(p);
  EXPECT_THROW(verify_file(p.string()), std::system_error);
}

}  // namespace
}  // namespace trinoforge
