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

#include "seqobf/detect.h"

#include <stdexcept>
#include <string>

#include "seqobf/kernels.h"

namespace seqobf {

bool has_pattern(std::span<const Symbol> trace, const Pattern& pattern) {
  const std::size_t l = pattern.length();
  if (l == 0) throw std::invalid_argument("pattern must have length >= 1");
  if (pattern.gap < 1) throw std::invalid_argument("pattern gap must be >= 1");
  const auto& q = pattern.symbols;
  if (l == 1) return kernels::FindSymbol(trace, q[0]) != kNotFound;
  if (l > trace.size()) return false;

  const std::size_t gap = pattern.gap;
  auto within = [gap](std::size_t from, std::size_t to) {
    return gap == kUnboundedGap || to - from <= gap;
  };

  // last[j]: latest index where a valid match of q(1..j+1) ends.
  std::vector<std::size_t> last(l, kNotFound);
  // No partial match can be extended past this index.
  std::size_t active_until = 0;
  bool active = false;

  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (!active || (gap != kUnboundedGap && i > active_until)) {
      // Nothing in flight: jump to the next candidate start.
      const std::size_t skip = kernels::FindSymbol(trace.subspan(i), q[0]);
      if (skip == kNotFound) return false;
      i += skip;
    }
    const Symbol s = trace[i];
    for (std::size_t j = l; j-- > 0;) {
      if (s != q[j]) continue;
      if (j > 0 && (last[j - 1] == kNotFound || !within(last[j - 1], i))) {
        continue;
      }
      if (j == l - 1) return true;
      last[j] = i;
      active = true;
      if (gap != kUnboundedGap) active_until = i + gap;
    }
  }
  return false;
}

bool has_pattern(const Trace& trace, const Pattern& pattern,
                 const Alphabet& alphabet) {
  ValidatePattern(pattern, alphabet);
  alphabet.validate(trace.symbols(), "trace");
  return has_pattern(trace.symbols(), pattern);
}

std::optional<std::size_t> first_occurrence(std::span<const Symbol> trace,
                                            const Pattern& pattern) {
  if (pattern.gap != 1) {
    throw std::invalid_argument(
        "first_occurrence is defined for contiguous patterns (gap 1)");
  }
  if (pattern.symbols.empty()) {
    throw std::invalid_argument("pattern must have length >= 1");
  }
  const std::size_t at = kernels::FindContiguous(trace, pattern.symbols);
  if (at == kNotFound) return std::nullopt;
  return at + 1;
}

PatternStats::PatternStats(std::size_t r, std::size_t order, std::size_t gap)
    : r_(r), order_(order), gap_(gap) {
  Alphabet alphabet(r);
  if (order < 1) throw std::invalid_argument("pattern order must be >= 1");
  if (gap < 1) throw std::invalid_argument("pattern gap must be >= 1");
  // Codes must fit in 64 bits.
  long double span = 1;
  for (std::size_t i = 0; i < order; ++i) span *= static_cast<long double>(r);
  if (span > 1.8e19L) {
    throw std::invalid_argument("r^order too large for pattern statistics");
  }
}

std::uint64_t PatternStats::Encode(std::span<const Symbol> pattern) const {
  std::uint64_t code = 0;
  for (Symbol s : pattern) code = code * r_ + s;
  return code;
}

std::vector<Symbol> PatternStats::Decode(std::uint64_t code) const {
  std::vector<Symbol> out(order_);
  for (std::size_t d = order_; d-- > 0;) {
    out[d] = static_cast<Symbol>(code % r_);
    code /= r_;
  }
  return out;
}

std::uint64_t PatternStats::count(std::span<const Symbol> pattern) const {
  if (pattern.size() != order_) {
    throw std::invalid_argument("pattern length " +
                                std::to_string(pattern.size()) +
                                " does not match stats order " +
                                std::to_string(order_));
  }
  for (Symbol s : pattern) {
    if (s >= r_) return 0;
  }
  const auto it = counts_.find(Encode(pattern));
  return it == counts_.end() ? 0 : it->second;
}

void PatternStats::update(Symbol next) {
  if (next >= r_) {
    throw std::invalid_argument("symbol " + std::to_string(next) +
                                " outside alphabet of size " +
                                std::to_string(r_));
  }
  ++k_;
  if (order_ == 1) {
    ++counts_[next];
    return;
  }
  Partials here(order_ - 1);
  here[0][next] = 1;
  for (const Partials& prev : recent_) {
    for (std::size_t level = 1; level < order_; ++level) {
      for (const auto& [code, n] : prev[level - 1]) {
        const std::uint64_t extended = code * r_ + next;
        if (level + 1 == order_) {
          counts_[extended] += n;
        } else {
          here[level][extended] += n;
        }
      }
    }
  }
  recent_.push_back(std::move(here));
  if (gap_ != kUnboundedGap && recent_.size() > gap_) recent_.pop_front();
}

PatternStats PatternStats::FromPrefix(std::span<const Symbol> prefix,
                                      std::size_t r, std::size_t order,
                                      std::size_t gap) {
  PatternStats stats(r, order, gap);
  for (Symbol s : prefix) stats.update(s);
  return stats;
}

PatternStats update_stats(PatternStats stats, Symbol next) {
  stats.update(next);
  return stats;
}

}  // namespace seqobf
