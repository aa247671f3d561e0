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

// Monte Carlo experiments.
//
// Fraction protocol: user 0 owns the pattern [r-l, ..., r-1], which is
// inserted at a random offset into a trace over the reduced alphabet
// {0..r-l-1}. The other n-1 users draw (or load) traces over the reduced
// alphabet, so the pattern can only appear in their output through
// obfuscation. Each iteration reports the fraction of those users whose
// obfuscated trace carries the pattern under gap h; iterations are averaged.
//
// Every iteration owns the stream RandomSource(seed, iteration), so results
// do not depend on the number of workers.

#ifndef SEQOBF_SIM_H_
#define SEQOBF_SIM_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seqobf/core.h"
#include "seqobf/engines.h"

namespace seqobf {

enum class Scenario { kFraction, kFirstOccurrence, kBoundsTable, kLemma3Count };
enum class TraceSourceKind { kSyntheticIid, kIngested };

std::string_view ScenarioName(Scenario scenario);
std::optional<Scenario> ParseScenario(std::string_view name);

struct ExperimentSpec {
  Scenario scenario = Scenario::kFraction;
  TraceSourceKind source = TraceSourceKind::kSyntheticIid;
  std::vector<Trace> ingested;  // used when source == kIngested
  std::string ingested_path;    // informational

  std::size_t users = 100;  // n, including the target user
  std::size_t m = 1000;
  std::size_t r = 20;
  std::size_t l = 2;
  std::size_t h = 10;
  std::vector<double> p_obf = {0.1};
  std::vector<Method> methods = {Method::kIid, Method::kSlSbu};
  double gamma = 0.1;
  double stage1_noise = 0;  // two_stage: a_n; b_n comes from p_obf
  std::size_t iterations = 100;
  std::uint64_t seed = 1;
  std::size_t workers = 1;

  // lemma3_count: per-user match probability; unset runs the full
  // obfuscate-and-detect pipeline with methods.front().
  std::optional<double> match_probability;
  double beta = 0.5;

  void validate() const;
  // Engine configuration for `method` at noise level `p`.
  EngineConfig EngineFor(Method method, double p) const;
};

struct Record {
  std::string scenario;
  std::string method;
  std::string metric;
  std::size_t m = 0;
  std::size_t r = 0;
  std::size_t l = 0;
  std::size_t h = 0;
  double p_obf = 0;
  std::size_t iterations = 0;
  std::size_t users = 0;
  double estimate = 0;
  double std_error = 0;
};

struct ExperimentResult {
  std::vector<Record> records;
  // lemma3_count: N per iteration.
  std::vector<std::size_t> match_counts;
  double wall_seconds = 0;

  // First record matching (method, metric, p); throws std::out_of_range.
  const Record& Find(std::string_view method, std::string_view metric,
                     std::optional<double> p_obf = std::nullopt) const;
};

struct InsertedPattern {
  Trace trace;
  Pattern pattern;
  std::size_t offset = 0;  // 0-based start of the inserted pattern
};

// Overwrites l consecutive positions of `base` (symbols < r-l) at a
// uniformly random offset with [r-l, ..., r-1].
InsertedPattern insert_unique_pattern(const Trace& base, std::size_t r,
                                      std::size_t l, RandomSource& source,
                                      std::size_t gap = 1);

// Uniform i.i.d. trace over {0..r-1}.
Trace SyntheticTrace(std::size_t m, std::size_t r, RandomSource& source);

ExperimentResult run_fraction(const ExperimentSpec& spec);

struct RaceResult {
  double mean_iid = 0;       // E(X)
  double mean_iid_se = 0;
  double mean_shortest = 0;  // E(Y)
  double mean_shortest_se = 0;
  double p_iid_later = 0;    // P(X > Y)
  double p_iid_later_se = 0;
};

// X: first occurrence of a random length-l pattern in a pure i.i.d.
// stream; Y: the same in back-to-back rotated shortest superstrings.
RaceResult run_first_occurrence_race(std::size_t r, std::size_t l,
                                     std::size_t iterations,
                                     std::uint64_t seed,
                                     std::size_t workers = 1);

ExperimentResult run_lemma3_count(const ExperimentSpec& spec);

// Closed-form bounds for every p in spec.p_obf.
ExperimentResult run_bounds_table(const ExperimentSpec& spec);

// Cartesian sweep over spec.p_obf x spec.methods for the fraction protocol.
ExperimentResult sweep(const ExperimentSpec& spec);

// Dispatches on spec.scenario.
ExperimentResult RunExperiment(const ExperimentSpec& spec);

// INI-style spec files; see README for the keys.
ExperimentSpec ParseExperimentSpec(std::istream& in,
                                   const std::string& base_dir = ".");
ExperimentSpec LoadExperimentSpec(const std::string& path);

// "0.1", "0.02,0.04" or "start:step:stop".
std::vector<double> ParseRealList(std::string_view text);

void WriteResultCsv(std::ostream& out, const ExperimentResult& result);

}  // namespace seqobf

#endif  // SEQOBF_SIM_H_
