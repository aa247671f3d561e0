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

#include "seqobf/superstring.h"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace seqobf {

std::string_view KindName(SuperstringKind kind) {
  return kind == SuperstringKind::kConcatenation ? "concat" : "shortest";
}

std::optional<SuperstringKind> ParseKind(std::string_view name) {
  if (name == "concat" || name == "concatenation") {
    return SuperstringKind::kConcatenation;
  }
  if (name == "shortest" || name == "debruijn") return SuperstringKind::kShortest;
  return std::nullopt;
}

std::uint64_t CheckedPower(std::size_t r, std::size_t l, std::uint64_t cap) {
  Alphabet alphabet(r);  // validates r
  if (l < 1) throw std::invalid_argument("superstring order l must be >= 1");
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < l; ++i) {
    if (result > cap / alphabet.size()) {
      throw std::invalid_argument(
          "r^l = " + std::to_string(r) + "^" + std::to_string(l) +
          " exceeds the size cap of " + std::to_string(cap));
    }
    result *= alphabet.size();
  }
  return result;
}

namespace {

// Ruskey's recursive FKM generator; depth is l.
void Fkm(std::size_t t, std::size_t p, std::size_t r, std::size_t l,
         std::vector<Symbol>& a, std::vector<Symbol>& out) {
  if (t > l) {
    if (l % p == 0) out.insert(out.end(), a.begin() + 1, a.begin() + 1 + p);
    return;
  }
  a[t] = a[t - p];
  Fkm(t + 1, p, r, l, a, out);
  for (std::size_t j = a[t - p] + 1u; j < r; ++j) {
    a[t] = static_cast<Symbol>(j);
    Fkm(t + 1, t, r, l, a, out);
  }
}

}  // namespace

std::vector<Symbol> de_bruijn(std::size_t r, std::size_t l,
                              std::uint64_t cap) {
  const std::uint64_t total = CheckedPower(r, l, cap);
  std::vector<Symbol> out;
  out.reserve(total);
  std::vector<Symbol> a(l + 1, 0);
  Fkm(1, 1, r, l, a, out);
  return out;
}

std::shared_ptr<const std::vector<Symbol>> CanonicalCycle(std::size_t r,
                                                          std::size_t l,
                                                          std::uint64_t cap) {
  CheckedPower(r, l, cap);
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>,
                  std::shared_ptr<const std::vector<Symbol>>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{r, l}];
  if (!slot) {
    slot = std::make_shared<const std::vector<Symbol>>(de_bruijn(r, l, cap));
  }
  return slot;
}

Superstring ShortestFromRotation(std::size_t r, std::size_t l,
                                 std::size_t rotation, std::uint64_t cap) {
  const auto cycle = CanonicalCycle(r, l, cap);
  const std::size_t n = cycle->size();
  if (rotation >= n) throw std::invalid_argument("rotation out of range");
  Superstring s{{}, r, l, SuperstringKind::kShortest, rotation};
  s.symbols.reserve(n + l - 1);
  s.symbols.insert(s.symbols.end(), cycle->begin() + static_cast<long>(rotation),
                   cycle->end());
  s.symbols.insert(s.symbols.end(), cycle->begin(),
                   cycle->begin() + static_cast<long>(rotation));
  s.symbols.insert(s.symbols.end(), s.symbols.begin(),
                   s.symbols.begin() + static_cast<long>(l - 1));
  return s;
}

Superstring shortest_superstring(std::size_t r, std::size_t l,
                                 RandomSource& source, std::uint64_t cap) {
  const std::uint64_t total = CheckedPower(r, l, cap);
  const auto rotation = static_cast<std::size_t>(source.uniform_int(total));
  return ShortestFromRotation(r, l, rotation, cap);
}

Superstring concat_superstring(std::size_t r, std::size_t l,
                               RandomSource& source, std::uint64_t cap) {
  const std::uint64_t total = CheckedPower(r, l, cap);
  const Permutation order = RandomPermutation(total, source);
  Superstring s{{}, r, l, SuperstringKind::kConcatenation, 0};
  s.symbols.resize(total * l);
  // Slot order.image(b) holds block b, written most significant digit first.
  for (std::size_t block = 0; block < total; ++block) {
    const std::size_t slot = order.image(block);
    std::size_t value = block;
    for (std::size_t d = l; d-- > 0;) {
      s.symbols[slot * l + d] = static_cast<Symbol>(value % r);
      value /= r;
    }
  }
  return s;
}

Superstring MakeSuperstring(SuperstringKind kind, std::size_t r, std::size_t l,
                            RandomSource& source, std::uint64_t cap) {
  return kind == SuperstringKind::kConcatenation
             ? concat_superstring(r, l, source, cap)
             : shortest_superstring(r, l, source, cap);
}

bool verify_superstring(std::span<const Symbol> seq, std::size_t r,
                        std::size_t l, std::uint64_t cap) {
  const std::uint64_t total = CheckedPower(r, l, cap);
  if (seq.size() < l || seq.size() - l + 1 < total) return false;
  std::vector<bool> seen(total, false);
  std::uint64_t distinct = 0;
  // Rolling base-r code of the current window; `valid` counts trailing
  // in-alphabet symbols.
  std::uint64_t code = 0;
  std::size_t valid = 0;
  const std::uint64_t top = total / r;
  for (Symbol s : seq) {
    if (s >= r) {
      valid = 0;
      code = 0;
      continue;
    }
    code = (code % top) * r + s;
    if (++valid >= l && !seen[code]) {
      seen[code] = true;
      if (++distinct == total) return true;
    }
  }
  return false;
}

}  // namespace seqobf
