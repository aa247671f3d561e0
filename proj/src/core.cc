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

#include "seqobf/core.h"

#include <numeric>
#include <string>

namespace seqobf {

Alphabet::Alphabet(std::size_t size) : size_(size) {
  if (size < 2) {
    throw std::invalid_argument("alphabet size must be at least 2, got " +
                                std::to_string(size));
  }
  if (size > std::size_t{std::numeric_limits<Symbol>::max()} + 1) {
    throw std::invalid_argument("alphabet size " + std::to_string(size) +
                                " exceeds the symbol range");
  }
}

void Alphabet::validate(std::span<const Symbol> symbols,
                        const char* what) const {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] >= size_) {
      throw std::invalid_argument(std::string(what) + ": symbol " +
                                  std::to_string(symbols[i]) + " at index " +
                                  std::to_string(i) +
                                  " is outside alphabet of size " +
                                  std::to_string(size_));
    }
  }
}

void ValidatePattern(const Pattern& pattern, const Alphabet& alphabet) {
  if (pattern.symbols.empty()) {
    throw std::invalid_argument("pattern must have length >= 1");
  }
  if (pattern.gap < 1) {
    throw std::invalid_argument("pattern gap must be >= 1");
  }
  alphabet.validate(pattern.symbols, "pattern");
}

std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  // Second round so that (a, b) and (b, a) land far apart.
  z += a * 0xd6e8feb86659fd93ULL;
  z = (z ^ (z >> 32)) * 0xd6e8feb86659fd93ULL;
  return z ^ (z >> 32);
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(MixSeed(seed, stream)) {}

RandomSource RandomSource::derive(std::uint64_t child) const {
  return RandomSource(MixSeed(seed_, stream_), child);
}

double RandomSource::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomSource::uniform_int(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_int bound must be >= 1");
  // Lemire's multiply-shift with rejection; exact and portable.
  std::uint64_t x = engine_();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = engine_();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

bool bernoulli(RandomSource& source, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("bernoulli probability must lie in [0, 1]");
  }
  return source.uniform01() < p;
}

Permutation::Permutation(std::vector<std::size_t> mapping)
    : mapping_(std::move(mapping)), inverse_(mapping_.size(), kNotFound) {
  for (std::size_t u = 0; u < mapping_.size(); ++u) {
    const std::size_t v = mapping_[u];
    if (v >= mapping_.size() || inverse_[v] != kNotFound) {
      throw std::invalid_argument("permutation mapping is not a bijection");
    }
    inverse_[v] = u;
  }
}

Permutation Permutation::Identity(std::size_t n) {
  std::vector<std::size_t> mapping(n);
  std::iota(mapping.begin(), mapping.end(), std::size_t{0});
  return Permutation(std::move(mapping));
}

Permutation RandomPermutation(std::size_t n, RandomSource& source) {
  std::vector<std::size_t> mapping(n);
  std::iota(mapping.begin(), mapping.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(source.uniform_int(i));
    std::swap(mapping[i - 1], mapping[j]);
  }
  return Permutation(std::move(mapping));
}

Anonymized anonymize(const std::vector<Trace>& traces, RandomSource& source) {
  if (traces.empty()) {
    throw std::invalid_argument("anonymize requires at least one trace");
  }
  Permutation perm = RandomPermutation(traces.size(), source);
  std::vector<Trace> out(traces.size());
  for (std::size_t u = 0; u < traces.size(); ++u) {
    out[perm.image(u)] = traces[u];
  }
  return Anonymized{std::move(out), std::move(perm)};
}

}  // namespace seqobf
