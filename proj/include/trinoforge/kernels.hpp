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

// Word-level kernels for GF(2)[x]: carry-less products and bit spreading.
// Each kernel has a portable path and a hardware path; the hardware paths are
// compiled with function-level target attributes and picked at runtime, so the
// binary still runs on CPUs without PCLMULQDQ or BMI2.

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string_view>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define TRINOFORGE_X86 1
#endif

namespace trinoforge {

using word_t = std::uint64_t;
inline constexpr unsigned kWordBits = 64;

enum class SpreadMethod { table, pdep };
enum class ClmulMethod { portable, pclmul };

struct Capabilities {
  bool bmi2 = false;
  bool pclmul = false;
};

inline const Capabilities& cpu() {
  static const Capabilities caps = [] {
    Capabilities c;
#ifdef TRINOFORGE_X86
    __builtin_cpu_init();
    c.bmi2 = __builtin_cpu_supports("bmi2");
    c.pclmul = __builtin_cpu_supports("pclmul");
#endif
    return c;
  }();
  return caps;
}

inline bool available(SpreadMethod m) { return m == SpreadMethod::table || cpu().bmi2; }
inline bool available(ClmulMethod m) { return m == ClmulMethod::portable || cpu().pclmul; }

inline SpreadMethod default_spread() {
  return available(SpreadMethod::pdep) ? SpreadMethod::pdep : SpreadMethod::table;
}
inline ClmulMethod default_clmul() {
  return available(ClmulMethod::pclmul) ? ClmulMethod::pclmul : ClmulMethod::portable;
}

inline std::string_view name(SpreadMethod m) { return m == SpreadMethod::pdep ? "pdep" : "table"; }
inline std::string_view name(ClmulMethod m) {
  return m == ClmulMethod::pclmul ? "pclmul" : "portable";
}

inline void require(SpreadMethod m) {
  if (!available(m)) throw std::runtime_error("spread method not supported on this CPU");
}
inline void require(ClmulMethod m) {
  if (!available(m)) throw std::runtime_error("clmul method not supported on this CPU");
}

namespace detail {

// 8-bit -> 16-bit spread: bit i of the index moves to bit 2i.
inline constexpr std::array<std::uint16_t, 256> kSpreadTable = [] {
  std::array<std::uint16_t, 256> t{};
  for (unsigned v = 0; v < 256; ++v) {
    std::uint16_t out = 0;
    for (unsigned i = 0; i < 8; ++i)
      if (v & (1u << i)) out |= std::uint16_t(1u << (2 * i));
    t[v] = out;
  }
  return t;
}();

inline word_t spread32_table(std::uint32_t v) {
  return word_t(kSpreadTable[v & 0xff]) | word_t(kSpreadTable[(v >> 8) & 0xff]) << 16 |
         word_t(kSpreadTable[(v >> 16) & 0xff]) << 32 | word_t(kSpreadTable[v >> 24]) << 48;
}

inline void spread_words_table(const word_t* in, std::size_t n, word_t* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const word_t w = in[i];
    out[2 * i] = spread32_table(std::uint32_t(w));
    out[2 * i + 1] = spread32_table(std::uint32_t(w >> 32));
  }
}

#ifdef TRINOFORGE_X86
__attribute__((target("bmi2"))) inline void spread_words_pdep(const word_t* in, std::size_t n,
                                                              word_t* out) {
  constexpr word_t kEven = 0x5555555555555555ull;
  for (std::size_t i = 0; i < n; ++i) {
    const word_t w = in[i];
    out[2 * i] = _pdep_u64(w, kEven);
    out[2 * i + 1] = _pdep_u64(w >> 32, kEven);
  }
}
#endif

// 64x64 -> 128 carry-less product with a 4-bit window.
inline unsigned __int128 clmul_portable(word_t a, word_t b) {
  using u128 = unsigned __int128;
  std::array<u128, 16> tab;
  tab[0] = 0;
  tab[1] = a;
  for (unsigned i = 2; i < 16; i += 2) {
    tab[i] = tab[i / 2] << 1;
    tab[i + 1] = tab[i] ^ a;
  }
  u128 r = 0;
  for (int shift = 60; shift >= 0; shift -= 4) r = (r << 4) ^ tab[(b >> shift) & 0xf];
  return r;
}

inline void mul_basecase_portable(const word_t* a, std::size_t n, const word_t* b, std::size_t m,
                                  word_t* out) {
  for (std::size_t k = 0; k < n + m; ++k) out[k] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      const auto p = clmul_portable(a[i], b[j]);
      out[i + j] ^= word_t(p);
      out[i + j + 1] ^= word_t(p >> 64);
    }
  }
}

#ifdef TRINOFORGE_X86
__attribute__((target("pclmul,sse4.1"))) inline void mul_basecase_pclmul(const word_t* a,
                                                                         std::size_t n,
                                                                         const word_t* b,
                                                                         std::size_t m,
                                                                         word_t* out) {
  for (std::size_t k = 0; k < n + m; ++k) out[k] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    const __m128i ai = _mm_cvtsi64_si128(static_cast<long long>(a[i]));
    for (std::size_t j = 0; j < m; ++j) {
      const __m128i bj = _mm_cvtsi64_si128(static_cast<long long>(b[j]));
      const __m128i p = _mm_clmulepi64_si128(ai, bj, 0x00);
      out[i + j] ^= static_cast<word_t>(_mm_cvtsi128_si64(p));
      out[i + j + 1] ^= static_cast<word_t>(_mm_extract_epi64(p, 1));
    }
  }
}
#endif

}  // namespace detail

// out must hold 2*n words.
inline void spread_words(const word_t* in, std::size_t n, word_t* out, SpreadMethod m) {
#ifdef TRINOFORGE_X86
  if (m == SpreadMethod::pdep) {
    detail::spread_words_pdep(in, n, out);
    return;
  }
#endif
  (void)m;
  detail::spread_words_table(in, n, out);
}

// Schoolbook word product; out must hold n + m words.
inline void mul_basecase(const word_t* a, std::size_t n, const word_t* b, std::size_t m,
                         word_t* out, ClmulMethod method) {
#ifdef TRINOFORGE_X86
  if (method == ClmulMethod::pclmul) {
    detail::mul_basecase_pclmul(a, n, b, m, out);
    return;
  }
#endif
  (void)method;
  detail::mul_basecase_portable(a, n, b, m, out);
}

}  // namespace trinoforge
