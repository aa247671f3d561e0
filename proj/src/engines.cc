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

#include "seqobf/engines.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace seqobf {

namespace {

constexpr struct {
  Method method;
  std::string_view name;
} kMethodNames[] = {
    {Method::kIid, "iid"},        {Method::kSbu, "sbu"},
    {Method::kSlSbu, "sl_sbu"},   {Method::kTwoStage, "two_stage"},
    {Method::kLov, "lov"},        {Method::kPlov, "plov"},
    {Method::kManp, "manp"},
};

void CheckProbability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

class IidReplacer final : public Replacer {
 public:
  explicit IidReplacer(std::size_t r) : r_(r) {}
  Symbol Next(RandomSource& noise) override {
    return static_cast<Symbol>(noise.uniform_int(r_));
  }

 private:
  std::size_t r_;
};

// Consumes concatenation superstrings left to right, drawing a fresh one on
// exhaustion.
class ConcatReplacer final : public Replacer {
 public:
  ConcatReplacer(std::size_t r, std::size_t l, std::uint64_t cap)
      : r_(r), l_(l), cap_(cap) {}

  Symbol Next(RandomSource& noise) override {
    if (cursor_ >= current_.size()) {
      current_ = concat_superstring(r_, l_, noise, cap_).symbols;
      cursor_ = 0;
    }
    return current_[cursor_++];
  }

 private:
  std::size_t r_;
  std::size_t l_;
  std::uint64_t cap_;
  std::vector<Symbol> current_;
  std::size_t cursor_ = 0;
};

// Same contract for shortest superstrings, read straight out of the shared
// canonical cycle: position j of the superstring with rotation s is
// cycle[(s + j) mod r^l] for j < r^l + l - 1.
class ShortestReplacer final : public Replacer {
 public:
  ShortestReplacer(std::size_t r, std::size_t l, std::uint64_t cap)
      : cycle_(CanonicalCycle(r, l, cap)), length_(cycle_->size() + l - 1) {}

  Symbol Next(RandomSource& noise) override {
    if (cursor_ >= length_) {
      rotation_ = static_cast<std::size_t>(noise.uniform_int(cycle_->size()));
      cursor_ = 0;
    }
    std::size_t at = rotation_ + cursor_++;
    if (at >= cycle_->size()) at -= cycle_->size();
    return (*cycle_)[at];
  }

 private:
  std::shared_ptr<const std::vector<Symbol>> cycle_;
  std::size_t length_;
  std::size_t rotation_ = 0;
  std::size_t cursor_ = std::numeric_limits<std::size_t>::max();
};

class LovReplacer final : public Replacer {
 public:
  explicit LovReplacer(std::size_t r) : state_(r) {}
  Symbol Next(RandomSource& noise) override {
    return lov_choose(state_, noise);
  }
  void Observe(Symbol z) override { state_.Observe(z); }

 private:
  LovState state_;
};

class PlovReplacer final : public Replacer {
 public:
  PlovReplacer(std::size_t r, double gamma) : counts_(r, 0), gamma_(gamma) {}

  Symbol Next(RandomSource& noise) override {
    const std::vector<double> p = plov_distribution(counts_, gamma_);
    const double u = noise.uniform01();
    double cumulative = 0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      cumulative += p[i];
      if (u < cumulative) return static_cast<Symbol>(i);
    }
    return static_cast<Symbol>(p.size() - 1);
  }
  void Observe(Symbol z) override { ++counts_[z]; }

 private:
  std::vector<std::uint64_t> counts_;
  double gamma_;
};

class ManpReplacer final : public Replacer {
 public:
  ManpReplacer(std::size_t r, std::size_t gap) : state_(r, gap) {}
  Symbol Next(RandomSource& noise) override {
    return manp_choose(state_, noise);
  }
  void Observe(Symbol z) override { state_.Observe(z); }

 private:
  ManpState state_;
};

}  // namespace

std::string_view MethodName(Method method) {
  for (const auto& entry : kMethodNames) {
    if (entry.method == method) return entry.name;
  }
  return "unknown";
}

std::optional<Method> ParseMethod(std::string_view name) {
  if (name == "slsbu" || name == "sl-sbu") return Method::kSlSbu;
  if (name == "two-stage") return Method::kTwoStage;
  for (const auto& entry : kMethodNames) {
    if (entry.name == name) return entry.method;
  }
  return std::nullopt;
}

void EngineConfig::validate() const {
  Alphabet alphabet(r);
  CheckProbability(p_obf, "p_obf");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("gamma must be a positive finite number");
  }
  if (gap < 1) throw std::invalid_argument("gap h must be >= 1");
  CheckProbability(stage1_noise, "stage-1 noise a_n");
  CheckProbability(stage2_noise, "stage-2 noise b_n");
  if (method == Method::kSbu || method == Method::kSlSbu ||
      method == Method::kTwoStage) {
    CheckedPower(r, order, size_cap);
  }
}

std::unique_ptr<Replacer> MakeReplacer(const EngineConfig& config) {
  switch (config.method) {
    case Method::kIid:
      return std::make_unique<IidReplacer>(config.r);
    case Method::kSbu:
      return std::make_unique<ConcatReplacer>(config.r, config.order,
                                              config.size_cap);
    case Method::kSlSbu:
      return std::make_unique<ShortestReplacer>(config.r, config.order,
                                                config.size_cap);
    case Method::kLov:
      return std::make_unique<LovReplacer>(config.r);
    case Method::kPlov:
      return std::make_unique<PlovReplacer>(config.r, config.gamma);
    case Method::kManp:
      return std::make_unique<ManpReplacer>(config.r, config.gap);
    case Method::kTwoStage:
      break;
  }
  throw std::invalid_argument("two_stage has no single replacement stream");
}

Obfuscation ObfuscateWithMask(const Trace& trace, const EngineConfig& config,
                              RandomSource& source) {
  config.validate();
  Alphabet(config.r).validate(trace.symbols(), "trace");
  if (config.method == Method::kTwoStage) {
    return TwoStageWithMask(trace, config.r, config.stage1_noise,
                            config.stage2_noise, config.order, source,
                            config.size_cap);
  }
  RandomSource mask_stream = source.derive(kMaskStream);
  RandomSource noise_stream = source.derive(kNoiseStream);
  std::unique_ptr<Replacer> replacer = MakeReplacer(config);

  std::vector<Symbol> out(trace.size());
  std::vector<bool> mask(trace.size(), false);
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const bool replace = bernoulli(mask_stream, config.p_obf);
    const Symbol z = replace ? replacer->Next(noise_stream) : trace[k];
    mask[k] = replace;
    out[k] = z;
    replacer->Observe(z);
  }
  return Obfuscation{Trace(std::move(out)), std::move(mask)};
}

Trace obfuscate(const Trace& trace, const EngineConfig& config,
                RandomSource& source) {
  return ObfuscateWithMask(trace, config, source).output;
}

Obfuscation TwoStageWithMask(const Trace& trace, std::size_t r,
                             double stage1_noise, double stage2_noise,
                             std::size_t order, RandomSource& source,
                             std::uint64_t size_cap) {
  CheckProbability(stage1_noise, "stage-1 noise a_n");
  CheckProbability(stage2_noise, "stage-2 noise b_n");
  EngineConfig first;
  first.method = Method::kIid;
  first.r = r;
  first.p_obf = stage1_noise;
  EngineConfig second;
  second.method = Method::kSlSbu;
  second.r = r;
  second.p_obf = stage2_noise;
  second.order = order;
  second.size_cap = size_cap;

  RandomSource first_stream = source.derive(kFirstStageStream);
  RandomSource second_stream = source.derive(kSecondStageStream);
  Obfuscation a = ObfuscateWithMask(trace, first, first_stream);
  Obfuscation b = ObfuscateWithMask(a.output, second, second_stream);
  for (std::size_t k = 0; k < b.mask.size(); ++k) {
    b.mask[k] = b.mask[k] || a.mask[k];
  }
  return b;
}

Trace two_stage_obfuscate(const Trace& trace, std::size_t r,
                          double stage1_noise, double stage2_noise,
                          std::size_t order, RandomSource& source) {
  return TwoStageWithMask(trace, r, stage1_noise, stage2_noise, order, source)
      .output;
}

double TwoStageNoiseLevel(double stage1_noise, double stage2_noise) {
  return stage1_noise + stage2_noise - stage1_noise * stage2_noise;
}

// --- LOV ---------------------------------------------------------------------

LovState::LovState(std::size_t r) : observed_(r, false), slot_(r) {
  Alphabet alphabet(r);
  unobserved_.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    unobserved_[i] = static_cast<Symbol>(i);
    slot_[i] = i;
  }
}

void LovState::Observe(Symbol z) {
  if (z >= observed_.size() || observed_[z]) return;
  observed_[z] = true;
  // Swap-remove z from the unobserved list.
  const std::size_t at = slot_[z];
  const Symbol moved = unobserved_.back();
  unobserved_[at] = moved;
  slot_[moved] = at;
  unobserved_.pop_back();
}

Symbol lov_choose(const LovState& state, RandomSource& source) {
  const auto pool = state.unobserved();
  if (pool.empty()) return static_cast<Symbol>(source.uniform_int(state.r()));
  return pool[source.uniform_int(pool.size())];
}

// --- PLOV --------------------------------------------------------------------

std::vector<double> plov_distribution(std::span<const std::uint64_t> counts,
                                      double gamma) {
  const std::size_t r = counts.size();
  Alphabet alphabet(r);
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  const double rd = static_cast<double>(r);
  std::vector<double> p(r, 1.0 / rd);

  std::uint64_t k = 0;
  for (std::uint64_t c : counts) k += c;
  if (k == 0) return p;

  std::vector<double> q(r);
  double total = 0;
  for (std::size_t i = 0; i < r; ++i) {
    q[i] = std::pow(static_cast<double>(counts[i]) / static_cast<double>(k),
                    gamma);
    total += q[i];
  }
  if (!(total > 0)) return p;
  for (double& qi : q) qi /= total;

  const auto [qmin_it, qmax_it] = std::minmax_element(q.begin(), q.end());
  const double upper = rd * *qmax_it - 1.0;
  const double lower = 1.0 - rd * *qmin_it;
  // A constraint whose denominator is not positive is inactive.
  const double inf = std::numeric_limits<double>::infinity();
  const double cap_high = upper > 0 ? 1.0 / upper : inf;
  const double cap_low = lower > 0 ? (rd - 1.0) / lower : inf;
  const double limit = std::min(cap_high, cap_low);
  if (!std::isfinite(limit)) return p;  // all q equal
  const double b = 0.99 * limit;

  double sum = 0;
  for (std::size_t i = 0; i < r; ++i) {
    p[i] = (1.0 + b) / rd - b * q[i];
    if (p[i] < 0 && p[i] > -1e-12) p[i] = 0;
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) {
      throw std::logic_error("PLOV produced an invalid probability");
    }
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::logic_error("PLOV probabilities do not sum to one");
  }
  return p;
}

// --- MANP --------------------------------------------------------------------

ManpState::ManpState(std::size_t r, std::size_t gap)
    : r_(r), gap_(gap), seen_(r * r, 0) {
  Alphabet alphabet(r);
  if (gap < 1) throw std::invalid_argument("gap h must be >= 1");
}

void ManpState::Observe(Symbol z) {
  if (z >= r_) throw std::invalid_argument("symbol outside alphabet");
  for (Symbol a : window_) {
    std::uint8_t& cell = seen_[std::size_t{a} * r_ + z];
    if (cell == 0) {
      cell = 1;
      ++distinct_;
    }
  }
  window_.push_back(z);
  if (gap_ != kUnboundedGap && window_.size() > gap_) window_.pop_front();
  ++k_;
}

std::vector<std::size_t> manp_scores(const ManpState& state) {
  const std::size_t r = state.r();
  std::vector<bool> in_window(r, false);
  std::vector<Symbol> distinct;
  for (Symbol a : state.window()) {
    if (!in_window[a]) {
      in_window[a] = true;
      distinct.push_back(a);
    }
  }
  std::vector<std::size_t> score(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    for (Symbol a : distinct) {
      score[i] += !state.seen(a, static_cast<Symbol>(i));
    }
  }
  return score;
}

Symbol manp_choose(const ManpState& state, RandomSource& source) {
  const std::vector<std::size_t> score = manp_scores(state);
  const std::size_t best = *std::max_element(score.begin(), score.end());
  std::vector<Symbol> ties;
  for (std::size_t i = 0; i < score.size(); ++i) {
    if (score[i] == best) ties.push_back(static_cast<Symbol>(i));
  }
  return ties[source.uniform_int(ties.size())];
}

// --- LOV bound ---------------------------------------------------------------

double lov_bound(std::size_t m, std::size_t r, double p_obf) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  Alphabet alphabet(r);
  CheckProbability(p_obf, "p_obf");
  const double rd = static_cast<double>(r);
  auto weight = [rd, r](std::size_t k) {
    return k < r ? static_cast<double>(k) / rd : 1.0;
  };
  if (p_obf == 0.0) return 0.0;  // all mass at k = 0
  if (p_obf == 1.0) return weight(m);

  const double md = static_cast<double>(m);
  const double log_p = std::log(p_obf);
  const double log_q = std::log1p(-p_obf);
  const double log_m_fact = std::lgamma(md + 1.0);
  double head = 0;  // k < r, weighted
  double tail = 0;  // k >= r
  for (std::size_t k = m + 1; k-- > 0;) {
    const double kd = static_cast<double>(k);
    const double log_pmf = log_m_fact - std::lgamma(kd + 1.0) -
                           std::lgamma(md - kd + 1.0) + kd * log_p +
                           (md - kd) * log_q;
    const double pmf = std::exp(log_pmf);
    if (k < r) {
      head += pmf * weight(k);
    } else {
      tail += pmf;
    }
  }
  return std::min(1.0, head + tail);
}

}  // namespace seqobf
