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

#ifndef SEQOBF_SUPERSTRING_H_
#define SEQOBF_SUPERSTRING_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "seqobf/core.h"

namespace seqobf {

// Largest r^l accepted by the constructors unless overridden.
inline constexpr std::uint64_t kDefaultSizeCap = std::uint64_t{1} << 24;

enum class SuperstringKind { kConcatenation, kShortest };

std::string_view KindName(SuperstringKind kind);
std::optional<SuperstringKind> ParseKind(std::string_view name);

// A sequence containing every length-l string over {0..r-1} as a
// contiguous (non-cyclic) substring.
//   kConcatenation: all r^l blocks laid end to end, length l*r^l.
//   kShortest:      rotated De Bruijn cycle plus l-1 wraparound symbols,
//                   length r^l + l - 1.
struct Superstring {
  std::vector<Symbol> symbols;
  std::size_t r = 0;
  std::size_t l = 0;
  SuperstringKind kind = SuperstringKind::kShortest;
  // Rotation applied to the canonical cycle (kShortest only).
  std::size_t rotation = 0;

  std::size_t size() const { return symbols.size(); }
};

// r^l, throwing std::invalid_argument if r < 2, l < 1 or the result
// exceeds `cap`.
std::uint64_t CheckedPower(std::size_t r, std::size_t l,
                           std::uint64_t cap = kDefaultSizeCap);

// Canonical B(r, l) built by concatenating the Lyndon words of length
// dividing l in lexicographic order (FKM). Starts with l zeros.
std::vector<Symbol> de_bruijn(std::size_t r, std::size_t l,
                              std::uint64_t cap = kDefaultSizeCap);

// Shared, memoized copy of de_bruijn(r, l); thread-safe.
std::shared_ptr<const std::vector<Symbol>> CanonicalCycle(
    std::size_t r, std::size_t l, std::uint64_t cap = kDefaultSizeCap);

// Canonical cycle rotated left by `rotation`, followed by its first l-1
// symbols.
Superstring ShortestFromRotation(std::size_t r, std::size_t l,
                                 std::size_t rotation,
                                 std::uint64_t cap = kDefaultSizeCap);

// Shortest superstring with a uniformly drawn rotation.
Superstring shortest_superstring(std::size_t r, std::size_t l,
                                 RandomSource& source,
                                 std::uint64_t cap = kDefaultSizeCap);

// Concatenation superstring with a uniformly random block order.
Superstring concat_superstring(std::size_t r, std::size_t l,
                               RandomSource& source,
                               std::uint64_t cap = kDefaultSizeCap);

Superstring MakeSuperstring(SuperstringKind kind, std::size_t r, std::size_t l,
                            RandomSource& source,
                            std::uint64_t cap = kDefaultSizeCap);

// True iff every length-l string over {0..r-1} occurs as a contiguous
// substring of `seq`. Symbols outside the alphabet simply never match.
bool verify_superstring(std::span<const Symbol> seq, std::size_t r,
                        std::size_t l, std::uint64_t cap = kDefaultSizeCap);

}  // namespace seqobf

#endif  // SEQOBF_SUPERSTRING_H_
