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

// trinoforge: search, test and certify primitive trinomials x^r + x^s + 1.
//
// Exit codes: 0 success, 1 verification failure, 2 usage, 3 I/O.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "trinoforge/bench.hpp"
#include "trinoforge/certificate.hpp"
#include "trinoforge/checkpoint.hpp"
#include "trinoforge/factor_engine.hpp"
#include "trinoforge/oracle.hpp"
#include "trinoforge/search.hpp"
#include "trinoforge/swan.hpp"

namespace {

using namespace trinoforge;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted.store(true); }

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------

struct SearchArgs {
  std::uint64_t r = 0;
  std::uint64_t s_from = 0;
  std::uint64_t s_to = 0;
  unsigned threads = 1;
  std::uint64_t dmax = 0;
  std::uint64_t batch = 64;
  std::string ckpt;
  std::string certs;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> limit;
  std::optional<double> time_limit;
  std::optional<unsigned> small_sieve;
};

int run_search_cmd(const SearchArgs& a) {
  SearchConfig cfg;
  cfg.r = a.r;
  cfg.s_from = a.s_from ? a.s_from : 1;
  cfg.s_to = a.s_to;
  cfg.threads = a.threads;
  cfg.classify.dmax = a.dmax;
  cfg.classify.batch = a.batch;
  if (a.seed) cfg.classify.seed = *a.seed;
  cfg.classify.small_sieve_degree = a.small_sieve;
  if (!a.ckpt.empty()) cfg.checkpoint = a.ckpt;
  if (!a.certs.empty()) cfg.certificates = a.certs;
  cfg.limit = a.limit;
  if (a.time_limit)
    cfg.time_limit = std::chrono::milliseconds(std::int64_t(*a.time_limit * 1000.0));
  cfg.interrupt = &g_interrupted;
  cfg.warn = [](const std::string& w) { std::cerr << "warning: " << w << '\n'; };

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  const auto t0 = std::chrono::steady_clock::now();
  const SearchResult res = run_search(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const auto c = res.state.counts();
  const std::uint64_t to = a.s_to ? a.s_to : a.r / 2;
  std::cout << "search r=" << a.r << " s=" << cfg.s_from << ".." << to
            << " decided=" << c.total() << '/' << search_space(a.r) << " primitive=" << c.primitive
            << " reducible=" << c.reducible << " swan=" << c.swan
            << (res.complete ? " complete" : res.range_complete ? " range-complete" : " partial")
            << '\n';
  for (auto s : res.primitives) std::cout << "primitive " << s << '\n';
  std::cerr << "new decisions: " << res.newly_decided << ", elapsed " << secs << " s"
            << (res.interrupted ? " (interrupted)" : "") << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

int run_test_cmd(std::uint64_t r, std::uint64_t s, bool use_oracle, std::uint64_t dmax,
                 std::uint64_t batch, std::optional<std::uint64_t> seed) {
  if (s == 0 || s >= r) throw UsageError("test requires 0 < s < r");
  ClassifyOptions opts;
  opts.dmax = dmax;
  opts.batch = batch;
  if (seed) opts.seed = *seed;
  const Trinomial t(r, s);
  const Verdict v = classify(t, opts);
  std::cout << to_string(t) << ": " << to_string(v) << '\n';
  if (!use_oracle) return kExitOk;

  if (r > oracle::kMaxFactorDegree)
    throw UsageError("--oracle is limited to degree " + std::to_string(oracle::kMaxFactorDegree));
  const auto factors = oracle::factorize_small(oracle::trinomial(unsigned(r), unsigned(s)));
  std::cout << "oracle factors:";
  for (const auto& f : factors) {
    std::cout << ' ' << oracle::to_poly(f.poly).to_hex();
    if (f.multiplicity > 1) std::cout << '^' << f.multiplicity;
  }
  std::cout << '\n';

  const bool oracle_irreducible = factors.size() == 1 && factors[0].multiplicity == 1;
  bool agree;
  if (std::holds_alternative<RuledOutBySwan>(v)) {
    agree = !oracle_irreducible;
  } else if (const auto* red = std::get_if<Reducible>(&v)) {
    const auto min_degree = unsigned(oracle::degree(factors.front().poly));
    bool listed = false;
    for (const auto& f : factors) listed |= oracle::to_poly(f.poly) == red->factor;
    agree = !oracle_irreducible && red->d == min_degree && listed;
  } else {
    agree = oracle_irreducible;
  }
  std::cout << "oracle: " << (agree ? "agree" : "DISAGREE") << '\n';
  return agree ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------

int run_swan_cmd(std::uint64_t r, std::optional<std::uint64_t> s, bool count_only) {
  if (s) {
    const Trinomial t(r, *s);
    const bool square = r % 2 == 0 && *s % 2 == 0;
    std::cout << to_string(t) << ": parity="
              << (square ? std::string("undefined (perfect square)")
                         : std::string(name(factor_parity(t))))
              << " ruled-out=" << (swan_rules_out(t) ? "yes" : "no") << '\n';
    return kExitOk;
  }
  if (r % 2 == 0 || r < 3) throw UsageError("swan without --s requires odd r >= 3");
  if (count_only) {
    std::cout << "swan r=" << r << " candidates=" << r / 2 << " survivors=" << count_surviving_s(r)
              << '\n';
    return kExitOk;
  }
  std::vector<std::uint64_t> list;
  for (auto v : surviving_s(r)) list.push_back(v);
  std::cout << "swan r=" << r << " candidates=" << r / 2 << " survivors=" << list.size() << '\n';
  for (auto v : list) std::cout << v << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

int run_verify_cmd(const std::vector<std::string>& paths) {
  bool all_ok = true;
  for (const auto& p : paths) {
    const VerifySummary sum = verify_file(p);
    std::cout << p << ": accepted=" << sum.accepted << " rejected=" << sum.rejected << '\n';
    if (!sum.ok()) {
      all_ok = false;
      std::cout << p << ": first rejection at line " << *sum.first_rejected_line << ": "
                << name(*sum.first_reason) << ": " << sum.first_detail << '\n';
    }
  }
  return all_ok ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------------------

int run_bench_cmd(const std::string& op_name, std::uint64_t degree, const std::string& spread,
                  const std::string& clmul, unsigned runs) {
  const auto op = parse_bench_op(op_name);
  if (!op) throw UsageError("unknown bench op '" + op_name + "'");
  BenchOptions opt;
  opt.op = *op;
  opt.degree = degree;
  if (spread == "table")
    opt.spread = SpreadMethod::table;
  else if (spread == "pdep")
    opt.spread = SpreadMethod::pdep;
  else if (spread != "auto")
    throw UsageError("unknown spread method '" + spread + "'");
  if (clmul == "portable")
    opt.clmul = ClmulMethod::portable;
  else if (clmul == "pclmul")
    opt.clmul = ClmulMethod::pclmul;
  else if (clmul != "auto")
    throw UsageError("unknown clmul method '" + clmul + "'");
  if (!available(opt.spread)) throw UsageError("spread method not supported on this CPU");
  if (!available(opt.clmul)) throw UsageError("clmul method not supported on this CPU");
  if (runs) opt.min_runs = runs;

  const BenchReport rep = bench(opt);
  std::cout << format_bench_line(rep) << '\n';
  std::cerr << "runs=" << rep.runs << " spread=" << name(opt.spread) << " clmul=" << name(opt.clmul)
            << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search, test and certify primitive trinomials x^r + x^s + 1 over GF(2)"};
  app.require_subcommand(1);

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "classify every s for a Mersenne exponent r");
  search->add_option("--r", sa.r, "degree (a Mersenne exponent)")->required();
  search->add_option("--s-from", sa.s_from, "first s (default 1)");
  search->add_option("--s-to", sa.s_to, "last s (default r/2)");
  search->add_option("--threads", sa.threads, "worker threads")->check(CLI::PositiveNumber);
  search->add_option("--dmax", sa.dmax, "sieve bound (default max(64, 8 ceil(log2 r)))");
  search->add_option("--batch", sa.batch, "steps per batched gcd")->check(CLI::PositiveNumber);
  search->add_option("--ckpt", sa.ckpt, "checkpoint file (created or resumed)");
  search->add_option("--certs", sa.certs, "certificate output file");
  search->add_option("--seed", sa.seed, "base seed for factor splitting");
  search->add_option("--limit", sa.limit, "stop after this many new decisions");
  search->add_option("--time-limit", sa.time_limit, "stop after this many seconds");
  search->add_option("--small-sieve", sa.small_sieve, "word-level sieve depth (0 disables)")
      ->check(CLI::Range(0u, kMaxSmallSieveDegree));

  std::uint64_t tr = 0, ts = 0, tdmax = 0, tbatch = 64;
  std::optional<std::uint64_t> tseed;
  bool toracle = false;
  auto* test = app.add_subcommand("test", "classify a single trinomial");
  test->add_option("--r", tr, "degree (odd prime)")->required();
  test->add_option("--s", ts, "middle exponent")->required();
  test->add_flag("--oracle", toracle, "cross-check with brute-force factorization");
  test->add_option("--dmax", tdmax, "sieve bound");
  test->add_option("--batch", tbatch, "steps per batched gcd")->check(CLI::PositiveNumber);
  test->add_option("--seed", tseed, "base seed for factor splitting");

  std::uint64_t wr = 0;
  std::optional<std::uint64_t> ws;
  bool wcount = false;
  auto* swan = app.add_subcommand("swan", "Swan's theorem filter");
  swan->add_option("--r", wr, "degree")->required();
  swan->add_option("--s", ws, "middle exponent");
  swan->add_flag("--count", wcount, "print only the survivor count");

  std::vector<std::string> vpaths;
  auto* verify = app.add_subcommand("verify-cert", "verify certificate files");
  verify->add_option("paths", vpaths, "certificate files")->required();

  std::string bop, bspread = "auto", bclmul = "auto";
  std::uint64_t bdegree = 0;
  unsigned bruns = 0;
  auto* benchc = app.add_subcommand("bench", "time square, modsquare or mul");
  benchc->add_option("--op", bop, "square | modsquare | mul")->required();
  benchc->add_option("--degree", bdegree, "polynomial degree")->required();
  benchc->add_option("--spread", bspread, "auto | table | pdep");
  benchc->add_option("--clmul", bclmul, "auto | portable | pclmul");
  benchc->add_option("--runs", bruns, "minimum number of timed runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*search) return run_search_cmd(sa);
    if (*test) return run_test_cmd(tr, ts, toracle, tdmax, tbatch, tseed);
    if (*swan) return run_swan_cmd(wr, ws, wcount);
    if (*verify) return run_verify_cmd(vpaths);
    if (*benchc) return run_bench_cmd(bop, bdegree, bspread, bclmul, bruns);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CheckpointError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::system_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
