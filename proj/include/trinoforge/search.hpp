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

// Exhaustive sweep over s for one Mersenne exponent r.
//
// Schedule: Swan-ruled-out s are decided inline by the driver. The rest go
// through two passes over a dynamic queue: first the sieves (cheap, decide
// most reducible trinomials), then the full test for the survivors. Workers
// share nothing mutable; the calling thread is the only writer of the
// checkpoint and certificate files. Final files are rewritten sorted by s, so
// output does not depend on thread count or on interruptions.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "trinoforge/certificate.hpp"
#include "trinoforge/checkpoint.hpp"
#include "trinoforge/factor_engine.hpp"

namespace trinoforge {

// Number of candidate s for degree r (s <= r/2 by reciprocal symmetry).
inline std::uint64_t search_space(std::uint64_t r) {
  if (r < 3) throw std::invalid_argument("search_space requires r >= 3");
  return r / 2;
}

struct SearchConfig {
  std::uint64_t r = 0;
  std::uint64_t s_from = 1;
  std::uint64_t s_to = 0;  // 0 = r/2
  unsigned threads = 1;
  ClassifyOptions classify;
  std::optional<std::filesystem::path> checkpoint;
  std::optional<std::filesystem::path> certificates;
  // Stop after this many new decisions in this run.
  std::optional<std::uint64_t> limit;
  std::optional<std::chrono::milliseconds> time_limit;
  // Polled by the writer; set from a signal handler to stop cleanly.
  const std::atomic<bool>* interrupt = nullptr;
  std::function<void(const std::string&)> warn;
};

struct SearchResult {
  SearchCheckpoint state;
  std::vector<std::uint64_t> primitives;  // every P in the state, ascending
  std::uint64_t newly_decided = 0;
  bool range_complete = false;  // every s in [s_from, s_to] decided
  bool complete = false;        // every s in [1, r/2] decided
  bool interrupted = false;
};

namespace detail {

struct WorkMessage {
  enum class Kind { result, done, failure } kind;
  std::uint64_t s = 0;
  std::optional<Verdict> verdict;
  std::exception_ptr error;
};

class Channel {
 public:
  void push(WorkMessage m) {
    {
      std::lock_guard lock(mu_);
      q_.push_back(std::move(m));
    }
    cv_.notify_one();
  }

  std::optional<WorkMessage> pop_for(std::chrono::milliseconds wait) {
    std::unique_lock lock(mu_);
    if (!cv_.wait_for(lock, wait, [&] { return !q_.empty(); })) return std::nullopt;
    WorkMessage m = std::move(q_.front());
    q_.pop_front();
    return m;
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<WorkMessage> q_;
};

inline std::map<std::uint64_t, std::string> load_certificates(const std::filesystem::path& path,
                                                              std::uint64_t r) {
  std::map<std::uint64_t, std::string> out;
  std::ifstream in(path, std::ios::binary);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    // getline hides a missing final newline; a torn line simply fails to parse.
    if (in.eof()) break;
    if (line.empty() || line.front() == '#') continue;
    std::string why;
    auto c = parse_certificate(line, why);
    if (c && c->r == r) out[c->s] = line;
  }
  return out;
}

inline std::string join_lines(const std::map<std::uint64_t, std::string>& lines) {
  std::string content;
  for (const auto& [s, line] : lines) content += line + '\n';
  return content;
}

}  // namespace detail

class SearchDriver {
 public:
  explicit SearchDriver(SearchConfig cfg) : cfg_(std::move(cfg)) {
    const std::uint64_t r = cfg_.r;
    if (r < 3 || r % 2 == 0 || !is_prime(r))
      throw std::invalid_argument("search requires an odd prime r");
    if (!is_mersenne_exponent(r))
      throw std::invalid_argument("r=" + std::to_string(r) + " is not a known Mersenne exponent");
    if (cfg_.s_to == 0) cfg_.s_to = r / 2;
    if (cfg_.s_from < 1 || cfg_.s_to > r / 2 || cfg_.s_from > cfg_.s_to)
      throw std::invalid_argument("s-range must lie within [1, r/2]");
    if (cfg_.threads < 1) throw std::invalid_argument("thread count must be >= 1");
  }

  SearchResult run() {
    const std::uint64_t r = cfg_.r;
    const auto started = std::chrono::steady_clock::now();
    if (cfg_.time_limit) deadline_ = started + *cfg_.time_limit;

    if (cfg_.checkpoint) {
      log_.emplace(*cfg_.checkpoint, r);
      for (const auto& w : log_->warnings()) warn(w);
      state_ = log_->state();
    } else {
      state_.r = r;
    }
    if (cfg_.certificates) open_certificates();

    const Classifier classifier(r, cfg_.classify);

    std::vector<std::uint64_t> pending;
    for (std::uint64_t s = cfg_.s_from; s <= cfg_.s_to && !stopping(); ++s) {
      if (state_.statuses.contains(s)) continue;
      if (swan_rules_out({r, s}))
        commit(s, RuledOutBySwan{});
      else
        pending.push_back(s);
    }

    std::vector<std::uint64_t> survivors;
    run_pass(pending, [&](std::uint64_t s, const std::stop_token& st) {
      return classifier.sieve(s, st);
    }, &survivors);
    std::sort(survivors.begin(), survivors.end());
    run_pass(survivors, [&](std::uint64_t s, const std::stop_token& st) {
      return std::optional<Verdict>(classifier.classify(s, st));
    }, nullptr);

    SearchResult res;
    res.interrupted = stopping() && !limit_reached();
    if (cfg_.certificates) finish_certificates(classifier, res.interrupted);
    if (log_) log_->compact();

    res.state = state_;
    res.newly_decided = newly_;
    for (const auto& [s, st] : state_.statuses)
      if (st.kind == StatusKind::primitive) res.primitives.push_back(s);
    res.complete = state_.statuses.size() == r / 2;
    res.range_complete = true;
    for (std::uint64_t s = cfg_.s_from; s <= cfg_.s_to; ++s)
      if (!state_.statuses.contains(s)) {
        res.range_complete = false;
        break;
      }
    return res;
  }

 private:
  using PassFn = std::function<std::optional<Verdict>(std::uint64_t, const std::stop_token&)>;

  void warn(const std::string& msg) {
    if (cfg_.warn) cfg_.warn(msg);
  }

  bool limit_reached() const { return cfg_.limit && newly_ >= *cfg_.limit; }

  bool stopping() {
    if (stop_.stop_requested()) return true;
    const bool interrupted = cfg_.interrupt && cfg_.interrupt->load();
    const bool timed_out = deadline_ && std::chrono::steady_clock::now() >= *deadline_;
    if (interrupted || timed_out || limit_reached()) stop_.request_stop();
    return stop_.stop_requested();
  }

  void open_certificates() {
    certs_ = detail::load_certificates(*cfg_.certificates, cfg_.r);
    write_file_atomically(*cfg_.certificates, detail::join_lines(certs_));
    cert_out_.open(*cfg_.certificates, std::ios::binary | std::ios::app);
    if (!cert_out_)
      throw std::system_error(errno, std::generic_category(),
                              "cannot append " + cfg_.certificates->string());
  }

  void commit(std::uint64_t s, const Verdict& v) {
    if (limit_reached()) return;
    Status st;
    if (const auto* red = std::get_if<Reducible>(&v)) {
      st = Status::reducible(red->d);
      // Certificate first: a checkpointed R always has its certificate on disk.
      if (cert_out_.is_open()) {
        std::string line = emit({cfg_.r, s}, red->d, red->factor);
        cert_out_ << line << '\n';
        cert_out_.flush();
        if (!cert_out_) throw std::system_error(errno, std::generic_category(), "certificate write");
        certs_[s] = std::move(line);
      }
    } else if (std::holds_alternative<Primitive>(v)) {
      st = Status::primitive();
    } else if (std::holds_alternative<RuledOutBySwan>(v)) {
      st = Status::swan();
    } else {
      throw std::logic_error("uncertified verdict at a Mersenne exponent");
    }
    if (log_) log_->append(s, st);
    state_.record(s, st);
    ++newly_;
  }

  // Runs fn over items on the worker pool. Nothing from fn means the item
  // moves on to `deferred`.
  void run_pass(const std::vector<std::uint64_t>& items, const PassFn& fn,
                std::vector<std::uint64_t>* deferred) {
    if (items.empty() || stopping()) return;
    detail::Channel channel;
    std::atomic<std::size_t> next{0};
    const unsigned workers =
        unsigned(std::min<std::size_t>(cfg_.threads, items.size()));
    std::vector<std::jthread> pool;
    const std::stop_token token = stop_.get_token();
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, token] {
        for (;;) {
          if (token.stop_requested()) break;
          const std::size_t i = next.fetch_add(1);
          if (i >= items.size()) break;
          try {
            auto v = fn(items[i], token);
            channel.push({detail::WorkMessage::Kind::result, items[i], std::move(v), nullptr});
          } catch (const Cancelled&) {
            break;
          } catch (...) {
            channel.push({detail::WorkMessage::Kind::failure, items[i], std::nullopt,
                          std::current_exception()});
            break;
          }
        }
        channel.push({detail::WorkMessage::Kind::done, 0, std::nullopt, nullptr});
      });
    }

    std::exception_ptr failure;
    unsigned done = 0;
    while (done < workers) {
      auto msg = channel.pop_for(std::chrono::milliseconds(100));
      stopping();
      if (!msg) continue;
      switch (msg->kind) {
        case detail::WorkMessage::Kind::done: ++done; break;
        case detail::WorkMessage::Kind::failure:
          if (!failure) failure = msg->error;
          stop_.request_stop();
          break;
        case detail::WorkMessage::Kind::result:
          if (failure) break;
          if (msg->verdict)
            commit(msg->s, *msg->verdict);
          else if (deferred)
            deferred->push_back(msg->s);
          stopping();
          break;
      }
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  void finish_certificates(const Classifier& classifier, bool interrupted) {
    cert_out_.close();
    std::map<std::uint64_t, std::string> final_lines;
    for (const auto& [s, st] : state_.statuses) {
      if (st.kind != StatusKind::reducible) continue;
      auto it = certs_.find(s);
      if (it != certs_.end()) {
        final_lines.emplace(s, it->second);
        continue;
      }
      if (interrupted) {
        warn("certificate for s=" + std::to_string(s) + " missing; rerun to regenerate");
        continue;
      }
      const Verdict v = classifier.classify(s);
      const auto* red = std::get_if<Reducible>(&v);
      if (!red || red->d != st.d)
        throw std::logic_error("recomputed verdict for s=" + std::to_string(s) +
                               " disagrees with checkpoint");
      final_lines.emplace(s, emit({cfg_.r, s}, red->d, red->factor));
    }
    write_file_atomically(*cfg_.certificates, detail::join_lines(final_lines));
  }

  SearchConfig cfg_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::stop_source stop_;
  std::optional<CheckpointLog> log_;
  SearchCheckpoint state_;
  std::map<std::uint64_t, std::string> certs_;
  std::ofstream cert_out_;
  std::uint64_t newly_ = 0;
};

inline SearchResult run_search(const SearchConfig& cfg) { return SearchDriver(cfg).run(); }

}  // namespace trinoforge
