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

// Search checkpoints. Text, append-only, flushed per line:
//
//   trinoforge-ckpt 1 r=<r>
//   <s> P          primitive
//   <s> R <d>      reducible, smallest factor degree d
//   <s> W          ruled out by Swan's theorem
//
// A torn final line (crash mid-write) is dropped with a warning on read.

#include <cerrno>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace trinoforge {

struct CheckpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class StatusKind : char { primitive = 'P', reducible = 'R', swan = 'W' };

struct Status {
  StatusKind kind = StatusKind::primitive;
  std::uint64_t d = 0;  // reducible only

  static Status primitive() { return {StatusKind::primitive, 0}; }
  static Status reducible(std::uint64_t d) { return {StatusKind::reducible, d}; }
  static Status swan() { return {StatusKind::swan, 0}; }

  friend bool operator==(const Status&, const Status&) = default;
};

struct StatusCounts {
  std::uint64_t primitive = 0;
  std::uint64_t reducible = 0;
  std::uint64_t swan = 0;
  std::uint64_t total() const { return primitive + reducible + swan; }
};

struct SearchCheckpoint {
  std::uint64_t r = 0;
  std::map<std::uint64_t, Status> statuses;

  StatusCounts counts() const {
    StatusCounts c;
    for (const auto& [s, st] : statuses) {
      switch (st.kind) {
        case StatusKind::primitive: ++c.primitive; break;
        case StatusKind::reducible: ++c.reducible; break;
        case StatusKind::swan: ++c.swan; break;
      }
    }
    return c;
  }

  // Statuses only accumulate; re-recording the same status is a no-op.
  void record(std::uint64_t s, Status st) {
    auto [it, inserted] = statuses.emplace(s, st);
    if (!inserted && it->second != st)
      throw CheckpointError("conflicting status for s=" + std::to_string(s));
  }

  friend bool operator==(const SearchCheckpoint&, const SearchCheckpoint&) = default;
};

inline std::string checkpoint_header(std::uint64_t r) {
  return "trinoforge-ckpt 1 r=" + std::to_string(r);
}

inline std::string format_status_line(std::uint64_t s, const Status& st) {
  std::string line = std::to_string(s) + ' ' + char(st.kind);
  if (st.kind == StatusKind::reducible) line += ' ' + std::to_string(st.d);
  return line;
}

namespace detail {

inline std::optional<std::uint64_t> parse_u64(std::string_view f) {
  std::uint64_t v = 0;
  if (f.empty() || (f.size() > 1 && f.front() == '0')) return std::nullopt;
  const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || p != f.data() + f.size()) return std::nullopt;
  return v;
}

inline bool parse_status_line(std::string_view line, std::uint64_t& s, Status& st) {
  const auto sp = line.find(' ');
  if (sp == std::string_view::npos) return false;
  const auto sv = parse_u64(line.substr(0, sp));
  if (!sv || *sv == 0) return false;
  s = *sv;
  const std::string_view rest = line.substr(sp + 1);
  if (rest == "P") {
    st = Status::primitive();
  } else if (rest == "W") {
    st = Status::swan();
  } else if (rest.size() > 2 && rest.substr(0, 2) == "R ") {
    const auto d = parse_u64(rest.substr(2));
    if (!d || *d == 0) return false;
    st = Status::reducible(*d);
  } else {
    return false;
  }
  return true;
}

inline std::optional<std::uint64_t> parse_header(std::string_view line) {
  constexpr std::string_view kMagic = "trinoforge-ckpt ";
  if (line.substr(0, kMagic.size()) != kMagic) throw CheckpointError("not a checkpoint file");
  line.remove_prefix(kMagic.size());
  const auto sp = line.find(' ');
  if (sp == std::string_view::npos) throw CheckpointError("malformed checkpoint header");
  if (line.substr(0, sp) != "1")
    throw CheckpointError("unsupported checkpoint version " + std::string(line.substr(0, sp)));
  const std::string_view rpart = line.substr(sp + 1);
  if (rpart.substr(0, 2) != "r=") throw CheckpointError("malformed checkpoint header");
  return parse_u64(rpart.substr(2));
}

}  // namespace detail

struct CheckpointReadResult {
  SearchCheckpoint state;
  std::vector<std::string> warnings;
};

inline CheckpointReadResult checkpoint_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::system_error(errno, std::generic_category(), "cannot open " + path.string());
  const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  CheckpointReadResult out;
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  bool torn = false;
  while (pos < content.size()) {
    const std::size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) {
      torn = true;
      break;
    }
    lines.emplace_back(content.data() + pos, nl - pos);
    pos = nl + 1;
  }
  if (torn) out.warnings.push_back("discarded torn final line of " + path.string());
  // A header torn by a crash leaves nothing to resume; r stays 0.
  if (lines.empty()) {
    if (!torn) throw CheckpointError("empty checkpoint: " + path.string());
    return out;
  }

  const auto r = detail::parse_header(lines.front());
  if (!r) throw CheckpointError("malformed checkpoint header");
  out.state.r = *r;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::uint64_t s = 0;
    Status st;
    if (!detail::parse_status_line(lines[i], s, st)) {
      if (i + 1 == lines.size() && !torn) {
        out.warnings.push_back("discarded corrupt final line of " + path.string());
        break;
      }
      throw CheckpointError("corrupt checkpoint line " + std::to_string(i + 1));
    }
    out.state.record(s, st);
  }
  return out;
}

inline void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::system_error(errno, std::generic_category(), "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out)
      throw std::system_error(errno, std::generic_category(), "cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Canonical form: header, then statuses sorted by s.
inline void checkpoint_write(const std::filesystem::path& path, const SearchCheckpoint& state) {
  std::string content = checkpoint_header(state.r) + '\n';
  for (const auto& [s, st] : state.statuses) content += format_status_line(s, st) + '\n';
  write_file_atomically(path, content);
}

// Append-only writer. Opening an existing file reads it, rewrites it in
// canonical form (dropping any torn tail), then appends.
class CheckpointLog {
 public:
  CheckpointLog(std::filesystem::path path, std::uint64_t r) : path_(std::move(path)) {
    state_.r = r;
    if (std::filesystem::exists(path_) && std::filesystem::file_size(path_) > 0) {
      auto read = checkpoint_read(path_);
      if (read.state.r == 0) read.state.r = r;
      if (read.state.r != r)
        throw CheckpointError("checkpoint is for r=" + std::to_string(read.state.r) +
                              ", not r=" + std::to_string(r));
      state_ = std::move(read.state);
      warnings_ = std::move(read.warnings);
    }
    checkpoint_write(path_, state_);
    out_.open(path_, std::ios::binary | std::ios::app);
    if (!out_)
      throw std::system_error(errno, std::generic_category(), "cannot append " + path_.string());
  }

  const SearchCheckpoint& state() const { return state_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  void append(std::uint64_t s, Status st) {
    state_.record(s, st);
    out_ << format_status_line(s, st) << '\n';
    out_.flush();
    if (!out_)
      throw std::system_error(errno, std::generic_category(), "cannot append " + path_.string());
  }

  // Rewrites the file sorted by s.
  void compact() {
    out_.close();
    checkpoint_write(path_, state_);
    out_.open(path_, std::ios::binary | std::ios::app);
  }

 private:
  std::filesystem::path path_;
  SearchCheckpoint state_;
  std::vector<std::string> warnings_;
  std::ofstream out_;
};

}  // namespace trinoforge
