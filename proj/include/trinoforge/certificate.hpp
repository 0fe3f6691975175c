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

// Reducibility certificates: "<r> <s> <d> <factor-hex>", one per line.
//
// The verifier rebuilds x^r + x^s + 1 densely and divides it by the factor
// with plain long division. It shares no code with the search hot path
// (no squaring, no trinomial folding, no multiplication, no sieve).
// It proves reducibility; it does not re-prove that d is minimal.

#include <cerrno>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "trinoforge/poly.hpp"
#include "trinoforge/trinomial.hpp"

namespace trinoforge {

struct Certificate {
  std::uint64_t r = 0;
  std::uint64_t s = 0;
  std::uint64_t d = 0;
  Poly factor;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// Verification refuses degrees whose dense trinomial would not fit in memory.
inline constexpr std::uint64_t kMaxCertificateDegree = std::uint64_t(1) << 34;

inline std::string format_certificate(const Certificate& c) {
  return std::to_string(c.r) + ' ' + std::to_string(c.s) + ' ' + std::to_string(c.d) + ' ' +
         c.factor.to_hex();
}

// Builds the certificate line for a factor found by the search. The factor is
// trusted to divide T; only its shape is checked here.
inline std::string emit(const Trinomial& t, std::uint64_t d, const Poly& factor) {
  if (factor.is_zero()) throw std::invalid_argument("certificate factor is zero");
  if (d == 0 || d >= t.r) throw std::invalid_argument("certificate degree out of range");
  if (factor.degree() != degree_t(d)) throw std::invalid_argument("certificate degree mismatch");
  return format_certificate({t.r, t.s, d, factor});
}

enum class RejectReason { parse, range, degree_mismatch, non_divisor };

inline std::string_view name(RejectReason r) {
  switch (r) {
    case RejectReason::parse: return "parse";
    case RejectReason::range: return "range";
    case RejectReason::degree_mismatch: return "degree-mismatch";
    case RejectReason::non_divisor: return "non-divisor";
  }
  return "unknown";
}

struct VerifyResult {
  std::optional<RejectReason> reject;  // empty = accepted
  std::string detail;

  bool accepted() const { return !reject.has_value(); }
};

namespace detail {

inline bool parse_decimal(std::string_view field, std::uint64_t& out) {
  if (field.empty() || (field.size() > 1 && field.front() == '0')) return false;
  for (char c : field)
    if (c < '0' || c > '9') return false;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

inline std::optional<Certificate> parse_certificate(std::string_view line, std::string& why) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t sp = line.find(' ', pos);
    fields.push_back(line.substr(pos, sp == std::string_view::npos ? sp : sp - pos));
    if (sp == std::string_view::npos) break;
    pos = sp + 1;
  }
  if (fields.size() != 4) {
    why = "expected 4 space-separated fields";
    return std::nullopt;
  }
  Certificate c;
  if (!parse_decimal(fields[0], c.r) || !parse_decimal(fields[1], c.s) ||
      !parse_decimal(fields[2], c.d)) {
    why = "malformed decimal field";
    return std::nullopt;
  }
  try {
    c.factor = Poly::from_hex(fields[3]);
  } catch (const std::invalid_argument& e) {
    why = e.what();
    return std::nullopt;
  }
  return c;
}

}  // namespace detail

inline VerifyResult verify(std::string_view line) {
  std::string why;
  const auto parsed = detail::parse_certificate(line, why);
  if (!parsed) return {RejectReason::parse, why};
  const Certificate& c = *parsed;

  if (c.s == 0 || c.s > c.r / 2) return {RejectReason::range, "s must satisfy 0 < s <= r/2"};
  if (c.r > kMaxCertificateDegree) return {RejectReason::range, "r exceeds verifier limit"};
  if (c.d == 0 || c.d >= c.r) return {RejectReason::range, "d must satisfy 0 < d < r"};
  const degree_t df = c.factor.degree();
  if (df <= 0 || df >= degree_t(c.r)) return {RejectReason::range, "factor degree out of range"};
  if (df != degree_t(c.d))
    return {RejectReason::degree_mismatch,
            "factor has degree " + std::to_string(df) + ", line claims " + std::to_string(c.d)};

  const Poly t = Poly::from_exponents({c.r, c.s, 0});
  if (!divrem(t, c.factor).remainder.is_zero())
    return {RejectReason::non_divisor, "factor does not divide the trinomial"};
  return {};
}

struct VerifySummary {
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::optional<std::uint64_t> first_rejected_line;  // 1-based
  std::optional<RejectReason> first_reason;
  std::string first_detail;

  bool ok() const { return rejected == 0; }
};

// Verifies every non-comment line of a certificate file. Throws
// std::system_error when the file cannot be read.
inline VerifySummary verify_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::system_error(errno, std::generic_category(), "cannot open " + path);
  const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::system_error(errno, std::generic_category(), "cannot read " + path);

  VerifySummary sum;
  auto record = [&](std::uint64_t lineno, VerifyResult res) {
    if (res.accepted()) {
      ++sum.accepted;
      return;
    }
    ++sum.rejected;
    if (!sum.first_rejected_line) {
      sum.first_rejected_line = lineno;
      sum.first_reason = res.reject;
      sum.first_detail = std::move(res.detail);
    }
  };

  std::size_t pos = 0;
  std::uint64_t lineno = 0;
  while (pos < content.size()) {
    ++lineno;
    const std::size_t nl = content.find('\n', pos);
    const std::string_view line(content.data() + pos,
                                (nl == std::string::npos ? content.size() : nl) - pos);
    pos = nl == std::string::npos ? content.size() : nl + 1;
    if (!line.empty() && line.front() == '#') continue;
    if (nl == std::string::npos) {
      record(lineno, {RejectReason::parse, "missing trailing newline"});
      continue;
    }
    record(lineno, verify(line));
  }
  return sum;
}

}  // namespace trinoforge
