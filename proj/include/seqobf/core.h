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

#ifndef SEQOBF_CORE_H_
#define SEQOBF_CORE_H_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seqobf {

// Symbols are the integers 0..r-1 of an Alphabet.
using Symbol = std::uint16_t;

inline constexpr std::size_t kNotFound = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kUnboundedGap =
    std::numeric_limits<std::size_t>::max();

// Raised for malformed external input (files, spec text).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Alphabet {
 public:
  explicit Alphabet(std::size_t size);

  std::size_t size() const { return size_; }
  bool contains(std::size_t symbol) const { return symbol < size_; }

  // Throws std::invalid_argument naming `what` if any symbol is >= size().
  void validate(std::span<const Symbol> symbols, const char* what) const;

 private:
  std::size_t size_;
};

// A length-m symbol sequence; used for raw, obfuscated and anonymized data.
class Trace {
 public:
  Trace() = default;
  explicit Trace(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const { return symbols_[i]; }
  std::span<const Symbol> symbols() const { return symbols_; }
  const std::vector<Symbol>& vec() const { return symbols_; }

  friend bool operator==(const Trace&, const Trace&) = default;
  friend auto operator<=>(const Trace&, const Trace&) = default;

 private:
  std::vector<Symbol> symbols_;
};

// Ordered symbols q(1)..q(l) whose consecutive matches must lie within
// `gap` positions of each other. kUnboundedGap disables the constraint.
struct Pattern {
  std::vector<Symbol> symbols;
  std::size_t gap = 1;

  std::size_t length() const { return symbols.size(); }
};

// Throws std::invalid_argument unless 1 <= l, gap >= 1 and symbols < r.
void ValidatePattern(const Pattern& pattern, const Alphabet& alphabet);

// Deterministic random stream keyed by (master seed, stream id). The
// generator is std::mt19937_64 and all conversions to integers/reals are
// done here, so draws are identical on every conforming platform.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  // Independent child stream; children with distinct ids do not overlap.
  RandomSource derive(std::uint64_t child) const;

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 bits of resolution; one draw.
  double uniform01();
  // Uniform on {0, ..., bound-1}; bound >= 1.
  std::uint64_t uniform_int(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

// Mixes a key chain into a 64-bit seed (splitmix64 finalizer).
std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b);

// Returns 1 with probability p, consuming exactly one draw.
bool bernoulli(RandomSource& source, double p);

// Bijection on {0..n-1}. The user with 0-based index u is published under
// pseudonym image(u).
class Permutation {
 public:
  explicit Permutation(std::vector<std::size_t> mapping);
  static Permutation Identity(std::size_t n);

  std::size_t size() const { return mapping_.size(); }
  std::size_t image(std::size_t u) const { return mapping_[u]; }
  std::size_t preimage(std::size_t v) const { return inverse_[v]; }
  const std::vector<std::size_t>& mapping() const { return mapping_; }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.mapping_ == b.mapping_;
  }

 private:
  std::vector<std::size_t> mapping_;
  std::vector<std::size_t> inverse_;
};

// Uniformly random permutation of n elements (Fisher-Yates).
Permutation RandomPermutation(std::size_t n, RandomSource& source);

struct Anonymized {
  std::vector<Trace> traces;  // traces[v] == input[permutation.preimage(v)]
  Permutation permutation;
};

Anonymized anonymize(const std::vector<Trace>& traces, RandomSource& source);

}  // namespace seqobf

#endif  // SEQOBF_CORE_H_
