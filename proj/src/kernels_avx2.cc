/*
 * Copyright 2026 The seqobf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "seqobf/kernels.h"

#include <cstring>

#if defined(__x86_64__) || defined(_M_X64)
#define SEQOBF_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#else
#define SEQOBF_HAVE_AVX2_KERNELS 0
#endif

namespace seqobf::kernels::avx2 {

#if SEQOBF_HAVE_AVX2_KERNELS

namespace {

constexpr std::size_t kLanes = 32 / sizeof(Symbol);
// movemask_epi8 yields two bits per 16-bit lane; keep the low bit of each.
constexpr unsigned kLaneBits = 0x55555555u;

__attribute__((target("avx2"))) inline __m256i Load(const Symbol* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

__attribute__((target("avx2"))) inline unsigned EqMask(__m256i a, __m256i b) {
  return static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi16(a, b))) &
         kLaneBits;
}

}  // namespace

__attribute__((target("avx2"))) std::size_t FindSymbol(
    std::span<const Symbol> data, Symbol symbol) {
  const __m256i needle = _mm256_set1_epi16(static_cast<short>(symbol));
  std::size_t i = 0;
  for (; i + kLanes <= data.size(); i += kLanes) {
    const unsigned mask = EqMask(Load(data.data() + i), needle);
    if (mask != 0) return i + (__builtin_ctz(mask) >> 1);
  }
  const std::size_t tail = scalar::FindSymbol(data.subspan(i), symbol);
  return tail == kNotFound ? kNotFound : i + tail;
}

// First/last-symbol filter, then verify the interior of each candidate.
__attribute__((target("avx2"))) std::size_t FindContiguous(
    std::span<const Symbol> haystack, std::span<const Symbol> needle) {
  const std::size_t n = needle.size();
  if (n == 0) return 0;
  if (n > haystack.size()) return kNotFound;
  if (n == 1) return FindSymbol(haystack, needle[0]);

  const __m256i first = _mm256_set1_epi16(static_cast<short>(needle[0]));
  const __m256i last = _mm256_set1_epi16(static_cast<short>(needle[n - 1]));
  const Symbol* base = haystack.data();
  std::size_t i = 0;
  for (; i + (n - 1) + kLanes <= haystack.size(); i += kLanes) {
    unsigned mask =
        EqMask(Load(base + i), first) & EqMask(Load(base + i + n - 1), last);
    while (mask != 0) {
      const std::size_t pos = i + (__builtin_ctz(mask) >> 1);
      if (n == 2 || std::memcmp(base + pos + 1, needle.data() + 1,
                                (n - 2) * sizeof(Symbol)) == 0) {
        return pos;
      }
      mask &= mask - 1;
    }
  }
  const std::size_t tail = scalar::FindContiguous(haystack.subspan(i), needle);
  return tail == kNotFound ? kNotFound : i + tail;
}

__attribute__((target("avx2"))) std::size_t CountSymbol(
    std::span<const Symbol> data, Symbol symbol) {
  const __m256i needle = _mm256_set1_epi16(static_cast<short>(symbol));
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + kLanes <= data.size(); i += kLanes) {
    count += static_cast<std::size_t>(
        __builtin_popcount(EqMask(Load(data.data() + i), needle)));
  }
  return count + scalar::CountSymbol(data.subspan(i), symbol);
}

#else  // !SEQOBF_HAVE_AVX2_KERNELS

std::size_t FindSymbol(std::span<const Symbol> data, Symbol symbol) {
  return scalar::FindSymbol(data, symbol);
}
std::size_t FindContiguous(std::span<const Symbol> haystack,
                           std::span<const Symbol> needle) {
  return scalar::FindContiguous(haystack, needle);
}
std::size_t CountSymbol(std::span<const Symbol> data, Symbol symbol) {
  return scalar::CountSymbol(data, symbol);
}

#endif

}  // namespace seqobf::kernels::avx2
