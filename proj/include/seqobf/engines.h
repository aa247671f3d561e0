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

// Obfuscation engines. Every engine walks a trace once; at each position a
// Bernoulli(p_obf) draw W decides whether the symbol is kept (W = 0) or
// replaced by the engine's next replacement symbol (W = 1).
//
//   iid        replacement uniform over the alphabet
//   sbu        consume a random concatenation superstring left to right
//   sl_sbu     consume a randomly rotated shortest superstring
//   two_stage  iid(a) followed by sl_sbu(b) on independent streams
//   lov        uniform over values not yet present in the output
//   plov       biased toward values observed least often so far
//   manp       value completing the most unseen length-2 patterns within h
//
// The W mask and the replacement symbols are drawn from two different child
// streams of the caller's RandomSource, so the mask for a given seed does
// not depend on the method.

#ifndef SEQOBF_ENGINES_H_
#define SEQOBF_ENGINES_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqobf/core.h"
#include "seqobf/detect.h"
#include "seqobf/superstring.h"

namespace seqobf {

enum class Method { kIid, kSbu, kSlSbu, kTwoStage, kLov, kPlov, kManp };

std::string_view MethodName(Method method);
std::optional<Method> ParseMethod(std::string_view name);

struct EngineConfig {
  Method method = Method::kIid;
  std::size_t r = 2;
  double p_obf = 0.0;
  double gamma = 0.1;       // plov
  std::size_t gap = 10;     // manp
  double stage1_noise = 0;  // two_stage, i.i.d. stage
  double stage2_noise = 0;  // two_stage, sl_sbu stage
  std::size_t order = 2;    // superstring order l (sbu, sl_sbu, two_stage)
  std::uint64_t size_cap = kDefaultSizeCap;

  // Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

// Child stream ids used by the engines.
inline constexpr std::uint64_t kMaskStream = 1;
inline constexpr std::uint64_t kNoiseStream = 2;
inline constexpr std::uint64_t kFirstStageStream = 3;
inline constexpr std::uint64_t kSecondStageStream = 4;

struct Obfuscation {
  Trace output;
  std::vector<bool> mask;  // W; true where the symbol was replaced
};

// Produces replacement symbols and observes every emitted output symbol.
class Replacer {
 public:
  virtual ~Replacer() = default;
  virtual Symbol Next(RandomSource& noise) = 0;
  virtual void Observe(Symbol /*z*/) {}
};

std::unique_ptr<Replacer> MakeReplacer(const EngineConfig& config);

Obfuscation ObfuscateWithMask(const Trace& trace, const EngineConfig& config,
                              RandomSource& source);
Trace obfuscate(const Trace& trace, const EngineConfig& config,
                RandomSource& source);

// Equivalent to sl_sbu(b) applied to iid(a) with child streams
// kFirstStageStream and kSecondStageStream. The mask is the union of both.
Obfuscation TwoStageWithMask(const Trace& trace, std::size_t r,
                             double stage1_noise, double stage2_noise,
                             std::size_t order, RandomSource& source,
                             std::uint64_t size_cap = kDefaultSizeCap);
Trace two_stage_obfuscate(const Trace& trace, std::size_t r,
                          double stage1_noise, double stage2_noise,
                          std::size_t order, RandomSource& source);

// Probability that a position is touched by either of two independent
// stages: a + b - a*b.
double TwoStageNoiseLevel(double stage1_noise, double stage2_noise);

// --- Data-dependent engine states ------------------------------------------

class LovState {
 public:
  explicit LovState(std::size_t r);
  void Observe(Symbol z);
  std::size_t r() const { return observed_.size(); }
  std::span<const Symbol> unobserved() const { return unobserved_; }

 private:
  std::vector<bool> observed_;
  std::vector<Symbol> unobserved_;
  std::vector<std::size_t> slot_;  // index of a symbol within unobserved_
};

// Uniform over symbols not yet observed; uniform over all r once every
// symbol has been seen.
Symbol lov_choose(const LovState& state, RandomSource& source);

// Replacement distribution given per-symbol output counts:
//   q~_i = (N_i / k)^gamma,  q_i = q~_i / sum_j q~_j,
//   b    = 0.99 * min(1 / (r q_max - 1), (r - 1) / (1 - r q_min)),
//   p_i  = (1 + b) / r - b q_i.
// k = 0 (or all q~ zero) yields the uniform vector. Throws std::logic_error
// if the result is not a probability distribution.
std::vector<double> plov_distribution(std::span<const std::uint64_t> counts,
                                      double gamma);

// Presence of length-2 patterns (gap-constrained) in the output so far,
// kept as a dense r x r table, plus the trailing window of width gap.
class ManpState {
 public:
  ManpState(std::size_t r, std::size_t gap);
  void Observe(Symbol z);

  std::size_t r() const { return r_; }
  std::size_t gap() const { return gap_; }
  std::size_t prefix_length() const { return k_; }
  bool seen(Symbol first, Symbol second) const {
    return seen_[std::size_t{first} * r_ + second] != 0;
  }
  // Number of distinct pairs observed.
  std::size_t distinct() const { return distinct_; }
  // Most recent symbols, at most gap of them, oldest first.
  const std::deque<Symbol>& window() const { return window_; }

 private:
  std::size_t r_;
  std::size_t gap_;
  std::size_t k_ = 0;
  std::size_t distinct_ = 0;
  std::vector<std::uint8_t> seen_;
  std::deque<Symbol> window_;
};

// For each candidate i, the number of distinct unseen pairs (a, i) with a
// in the trailing window.
std::vector<std::size_t> manp_scores(const ManpState& state);
// Argmax of manp_scores, ties broken uniformly at random.
Symbol manp_choose(const ManpState& state, RandomSource& source);

// Lower bound on the LOV detection probability for l = 1:
//   sum_{k<r} Bin(m,p)(k) * k/r + sum_{k>=r} Bin(m,p)(k).
double lov_bound(std::size_t m, std::size_t r, double p_obf);

}  // namespace seqobf

#endif  // SEQOBF_ENGINES_H_
