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

#ifndef SEQOBF_DETECT_H_
#define SEQOBF_DETECT_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "seqobf/core.h"

namespace seqobf {

// True iff there are indices i1 < ... < il with trace[ij] == q(j) and
// i(j+1) - ij <= pattern.gap. Runs in O(m * l).
bool has_pattern(std::span<const Symbol> trace, const Pattern& pattern);
bool has_pattern(const Trace& trace, const Pattern& pattern,
                 const Alphabet& alphabet);

// Smallest 1-based t with trace[t..t+l-1] == pattern, or nullopt.
// Throws std::invalid_argument unless pattern.gap == 1.
std::optional<std::size_t> first_occurrence(std::span<const Symbol> trace,
                                            const Pattern& pattern);

// Counts, for every length-l pattern Q, the number of index tuples that
// realize Q (gap-constrained) within the prefix seen so far.
class PatternStats {
 public:
  PatternStats(std::size_t r, std::size_t order, std::size_t gap);

  std::size_t r() const { return r_; }
  std::size_t order() const { return order_; }
  std::size_t gap() const { return gap_; }
  std::size_t prefix_length() const { return k_; }

  // Appends one symbol and updates all counts.
  void update(Symbol next);

  std::uint64_t count(std::span<const Symbol> pattern) const;
  bool seen(std::span<const Symbol> pattern) const { return count(pattern) > 0; }
  // Number of distinct patterns with a positive count.
  std::size_t distinct() const { return counts_.size(); }

  // Pattern code -> count, codes are base-r with q(1) most significant.
  const std::unordered_map<std::uint64_t, std::uint64_t>& counts() const {
    return counts_;
  }
  std::uint64_t Encode(std::span<const Symbol> pattern) const;
  std::vector<Symbol> Decode(std::uint64_t code) const;

  // Counts over an entire prefix, equivalent to repeated update().
  static PatternStats FromPrefix(std::span<const Symbol> prefix, std::size_t r,
                                 std::size_t order, std::size_t gap);

 private:
  // Partial tuples ending at one position: level j (1-based, < order) maps
  // prefix code -> number of tuples of length j ending there.
  using Partials = std::vector<std::unordered_map<std::uint64_t, std::uint64_t>>;

  std::size_t r_;
  std::size_t order_;
  std::size_t gap_;
  std::size_t k_ = 0;
  std::unordered_map<std::uint64_t, std::uint64_t> counts_;
  std::deque<Partials> recent_;  // newest at back, at most gap_ entries
};

// Functional form: returns stats after appending `next`.
PatternStats update_stats(PatternStats stats, Symbol next);

}  // namespace seqobf

#endif  // SEQOBF_DETECT_H_
