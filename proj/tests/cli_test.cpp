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

// End-to-end checks of the command-line tool.

#include <sys/wait.h>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "test_util.hpp"

namespace trinoforge {
namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TRINOFORGE_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(CliTest, SearchThirtyOne) {
  const auto r = run("search --r 31");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "search r=31 s=1..15 decided=15/15 primitive=4 reducible=10 swan=1 complete\n"
            "primitive 3\nprimitive 6\nprimitive 7\nprimitive 13\n");
}

TEST(CliTest, SearchWithFilesIsThreadIndependent) {
  const auto c1 = testing::temp_path("cli-c1"), k1 = testing::temp_path("cli-k1");
  const auto c4 = testing::temp_path("cli-c4"), k4 = testing::temp_path("cli-k4");
  const auto a = run("search --r 127 --threads 1 --ckpt " + k1.string() + " --certs " + c1.string());
  const auto b = run("search --r 127 --threads 4 --ckpt " + k4.string() + " --certs " + c4.string());
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(slurp(k1), slurp(k4));
  EXPECT_EQ(slurp(c1), slurp(c4));
  EXPECT_EQ(run("verify-cert " + c1.string()).code, 0);
}

TEST(CliTest, LimitThenResume) {
  const auto k = testing::temp_path("cli-lim-k"), c = testing::temp_path("cli-lim-c");
  const std::string files = " --ckpt " + k.string() + " --certs " + c.string();
  const auto first = run("search --r 127 --limit 10" + files);
  EXPECT_EQ(first.code, 0);
  EXPECT_NE(first.out.find(" partial\n"), std::string::npos);
  const auto second = run("search --r 127" + files);
  EXPECT_EQ(second.out, run("search --r 127").out);
}

// A real SIGINT mid-search leaves a resumable checkpoint; the resumed run
// ends byte-identical to an uninterrupted one.
TEST(CliTest, SigintThenResume) {
  const std::string range = " --r 9689 --s-to 300";
  const auto kf = testing::temp_path("cli-sig-kf"), cf = testing::temp_path("cli-sig-cf");
  const auto k = testing::temp_path("cli-sig-k"), c = testing::temp_path("cli-sig-c");
  const std::string files = " --ckpt " + k.string() + " --certs " + c.string();
  EXPECT_EQ(run("search" + range + " --ckpt " + kf.string() + " --certs " + cf.string()).code, 0);

  const std::string script = std::string(TRINOFORGE_CLI) + " search" + range + files +
                             " >/dev/null 2>&1 & pid=$!; sleep 1; kill -INT $pid; wait $pid";
  const int status = std::system(("sh -c '" + script + "'").c_str());
  EXPECT_TRUE(WIFEXITED(status) && WEXITSTATUS(status) == 0);
  const std::string partial = slurp(k);
  EXPECT_NE(partial, slurp(kf)) << "search finished before the signal arrived";

  const auto resumed = run("search" + range + files);
  EXPECT_EQ(resumed.code, 0);
  EXPECT_NE(resumed.out.find("range-complete"), std::string::npos);
  EXPECT_EQ(slurp(k), slurp(kf));
  EXPECT_EQ(slurp(c), slurp(cf));
}

TEST(CliTest, TestSubcommand) {
  auto r = run("test --r 31 --s 3 --oracle");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x^31 + x^3 + 1: primitive\noracle factors: 80000009\noracle: agree\n");
  r = run("test --r 31 --s 1 --oracle");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("x^31 + x^1 + 1: reducible d=3 factor=", 0), 0u);
  EXPECT_NE(r.out.find("oracle: agree"), std::string::npos);
  EXPECT_EQ(run("test --r 13 --s 1").out, "x^13 + x^1 + 1: ruled-out-by-swan\n");
  EXPECT_EQ(run("test --r 15 --s 1").code, 2);
  EXPECT_EQ(run("test --r 13 --s 0").code, 2);
}

TEST(CliTest, SwanSubcommand) {
  EXPECT_EQ(run("swan --r 13").out, "swan r=13 candidates=6 survivors=1\n2\n");
  EXPECT_EQ(run("swan --r 31 --count").out, "swan r=31 candidates=15 survivors=14\n");
  EXPECT_EQ(run("swan --r 13 --s 4").out, "x^13 + x^4 + 1: parity=even ruled-out=yes\n");
  EXPECT_EQ(run("swan --r 8").code, 2);
}

TEST(CliTest, VerifyCertExitCodes) {
  const auto p = testing::temp_path("cli-verify");
  std::ofstream(p) << "13 1 5 3b\n";
  EXPECT_EQ(run("verify-cert " + p.string()).code, 0);
  std::ofstream(p) << "13 1 5 3b\n13 1 5 3d\n";
  const auto bad = run("verify-cert " + p.string());
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("line 2: non-divisor"), std::string::npos);
  EXPECT_EQ(run("verify-cert " + p.string() + ".missing").code, 3);
}

TEST(CliTest, Bench) {
  const auto r = run("bench --op square --degree 10000 --runs 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("bench square 10000 ", 0), 0u);
  EXPECT_EQ(run("bench --op cube --degree 10").code, 2);
  EXPECT_EQ(run("bench --op square --degree 0").code, 2);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("search").code, 2);
  EXPECT_EQ(run("search --r 29").code, 2);
  EXPECT_EQ(run("search --r 31 --threads 0").code, 2);
  const auto k = testing::temp_path("cli-badckpt");
  std::ofstream(k) << "garbage\n";
  EXPECT_EQ(run("search --r 31 --ckpt " + k.string()).code, 3);
}

}  // namespace
}  // namespace trinoforge
