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

// Slow, obviously-correct reference implementations shared by the unit and
// acceptance tests. None of these reuse library code paths.

#ifndef SEQOBF_TESTS_TEST_ORACLES_H_
#define SEQOBF_TESTS_TEST_ORACLES_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "seqobf/core.h"

namespace seqobf::testing {

// Enumerates every increasing index tuple and counts those that spell
// `pattern` with consecutive distances <= gap.
inline std::uint64_t BruteCountTuples(const std::vector<Symbol>& trace,
                                      const std::vector<Symbol>& pattern,
                                      std::size_t gap) {
  std::uint64_t total = 0;
  std::vector<std::size_t> idx;
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == pattern.size()) {
      ++total;
      return;
    }
    const std::size_t start = depth == 0 ? 0 : idx.back() + 1;
    for (std::size_t i = start; i < trace.size(); ++i) {
      if (depth > 0 && i - idx.back() > gap) break;
      if (trace[i] != pattern[depth]) continue;
      idx.push_back(i);
      self(self, depth + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return total;
}

inline bool BruteHasPattern(const std::vector<Symbol>& trace,
                            const std::vector<Symbol>& pattern,
                            std::size_t gap) {
  return BruteCountTuples(trace, pattern, gap) > 0;
}

// Naive quadratic contiguous search; 0-based index or kNotFound.
inline std::size_t NaiveFind(const std::vector<Symbol>& hay,
                             const std::vector<Symbol>& needle) {
  if (needle.empty()) return 0;
  for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < needle.size() && ok; ++j) {
      ok = hay[i + j] == needle[j];
    }
    if (ok) return i;
  }
  return kNotFound;
}

// Set of linear length-l windows, each encoded base r.
inline std::set<std::uint64_t> LinearWindows(const std::vector<Symbol>& seq,
                                             std::size_t r, std::size_t l) {
  std::set<std::uint64_t> out;
  for (std::size_t i = 0; i + l <= seq.size(); ++i) {
    std::uint64_t code = 0;
    for (std::size_t j = 0; j < l; ++j) code = code * r + seq[i + j];
    out.insert(code);
  }
  return out;
}

inline std::uint64_t IntPow(std::uint64_t r, std::size_t l) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < l; ++i) out *= r;
  return out;
}

// True iff some sequence of length `len` over r symbols contains all r^l
// linear windows; exhaustive over r^len sequences.
inline bool AnySuperstringOfLength(std::size_t r, std::size_t l,
                                   std::size_t len) {
  const std::uint64_t total = IntPow(r, len);
  const std::size_t need = IntPow(r, l);
  std::vector<Symbol> seq(len);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < len; ++i) {
      seq[i] = static_cast<Symbol>(c % r);
      c /= r;
    }
    if (LinearWindows(seq, r, l).size() == need) return true;
  }
  return false;
}

// Pearson chi-square p-value for observed counts against equal expected
// frequencies.
inline double UniformChiSquarePValue(const std::vector<std::uint64_t>& counts) {
  double n = 0;
  for (auto c : counts) n += static_cast<double>(c);
  const double expected = n / static_cast<double>(counts.size());
  double stat = 0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace seqobf::testing

#endif  // SEQOBF_TESTS_TEST_ORACLES_H_
