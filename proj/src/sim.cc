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

#include "seqobf/sim.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "seqobf/bounds.h"
#include "seqobf/detect.h"
#include "seqobf/ingest.h"
#include "seqobf/kernels.h"
#include "seqobf/superstring.h"

namespace seqobf {

namespace {

constexpr std::uint64_t kDataStream = 0;
constexpr std::uint64_t kObfuscationStream = 1;

// Race sub-streams.
constexpr std::uint64_t kRacePatternStream = 0;
constexpr std::uint64_t kRaceIidStream = 1;
constexpr std::uint64_t kRaceShortestStream = 2;
constexpr std::size_t kRaceChunk = 4096;

constexpr struct {
  Scenario scenario;
  std::string_view name;
} kScenarioNames[] = {
    {Scenario::kFraction, "fraction"},
    {Scenario::kFirstOccurrence, "first_occurrence"},
    {Scenario::kBoundsTable, "bounds_table"},
    {Scenario::kLemma3Count, "lemma3_count"},
};

// Runs body(i) for i in [0, count) on `workers` threads. The first
// exception thrown by any worker is rethrown on the caller.
void ParallelFor(std::size_t count, std::size_t workers,
                 const std::function<void(std::size_t)>& body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto run = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct Moments {
  double mean = 0;
  double std_error = 0;
};

Moments Summarize(const std::vector<double>& values) {
  Moments out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  double sum = 0;
  for (double v : values) sum += v;
  out.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss / (n - 1) / n);
  }
  return out;
}

Record MakeRecord(const ExperimentSpec& spec, std::string method,
                  std::string metric, double p, Moments moments) {
  Record rec;
  rec.scenario = std::string(ScenarioName(spec.scenario));
  rec.method = std::move(method);
  rec.metric = std::move(metric);
  rec.m = spec.m;
  rec.r = spec.r;
  rec.l = spec.l;
  rec.h = spec.h;
  rec.p_obf = p;
  rec.iterations = spec.iterations;
  rec.users = spec.users;
  rec.estimate = moments.mean;
  rec.std_error = moments.std_error;
  return rec;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

Pattern IdentifyingPattern(const ExperimentSpec& spec) {
  Pattern pattern;
  pattern.gap = spec.h;
  for (std::size_t j = 0; j < spec.l; ++j) {
    pattern.symbols.push_back(static_cast<Symbol>(spec.r - spec.l + j));
  }
  return pattern;
}

// Base (pre-insertion) traces for all n users of one iteration; index 0 is
// the target user.
std::vector<Trace> DrawPopulation(const ExperimentSpec& spec,
                                  const RandomSource& data) {
  std::vector<Trace> population;
  population.reserve(spec.users);
  const std::size_t reduced = spec.r - spec.l;
  if (spec.source == TraceSourceKind::kSyntheticIid) {
    for (std::size_t u = 0; u < spec.users; ++u) {
      RandomSource user = data.derive(u);
      population.push_back(SyntheticTrace(spec.m, reduced, user));
    }
    return population;
  }
  // Ingested: a uniformly random subset of users when the pool is large
  // enough, otherwise draws with replacement.
  RandomSource pick = data.derive(spec.users);
  const std::size_t pool = spec.ingested.size();
  std::vector<std::size_t> chosen;
  if (pool >= spec.users) {
    const Permutation perm = RandomPermutation(pool, pick);
    for (std::size_t u = 0; u < spec.users; ++u) chosen.push_back(perm.preimage(u));
  } else {
    for (std::size_t u = 0; u < spec.users; ++u) {
      chosen.push_back(static_cast<std::size_t>(pick.uniform_int(pool)));
    }
  }
  for (std::size_t index : chosen) {
    const auto& symbols = spec.ingested[index].vec();
    population.emplace_back(std::vector<Symbol>(
        symbols.begin(), symbols.begin() + static_cast<long>(spec.m)));
  }
  return population;
}

// fractions[cell][iteration] for cells ordered p-major, method-minor.
std::vector<std::vector<double>> FractionSamples(const ExperimentSpec& spec) {
  const std::size_t cells = spec.p_obf.size() * spec.methods.size();
  std::vector<std::vector<double>> samples(
      cells, std::vector<double>(spec.iterations, 0.0));
  const Pattern pattern = IdentifyingPattern(spec);

  std::vector<EngineConfig> configs;
  for (double p : spec.p_obf) {
    for (Method method : spec.methods) configs.push_back(spec.EngineFor(method, p));
  }

  ParallelFor(spec.iterations, spec.workers, [&](std::size_t it) {
    const RandomSource iteration(spec.seed, it);
    const RandomSource data = iteration.derive(kDataStream);
    const RandomSource noise = iteration.derive(kObfuscationStream);
    std::vector<Trace> population = DrawPopulation(spec, data);
    // The target's trace only matters for bookkeeping here: its pattern
    // symbols are reserved, so other users can match only through noise.
    RandomSource target_src = data.derive(spec.users + 1);
    population[0] =
        insert_unique_pattern(population[0], spec.r, spec.l, target_src, spec.h)
            .trace;
    for (std::size_t c = 0; c < configs.size(); ++c) {
      std::size_t hits = 0;
      for (std::size_t u = 1; u < spec.users; ++u) {
        RandomSource stream = noise.derive(u);
        const Trace z = obfuscate(population[u], configs[c], stream);
        if (has_pattern(z.symbols(), pattern)) ++hits;
      }
      samples[c][it] =
          static_cast<double>(hits) / static_cast<double>(spec.users - 1);
    }
  });
  return samples;
}

void CheckG(const ExperimentSpec& spec) {
  BoundParams params{spec.m, spec.r, spec.l, spec.h, 0.0};
  if (params.G() <= 0) {
    throw std::invalid_argument("G = m - h(l-1) = " +
                                std::to_string(params.G()) +
                                " must be positive");
  }
}

std::string Trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double ParseDouble(const std::string& text) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ParseError("not a number: '" + text + "'");
  }
  return value;
}

}  // namespace

std::string_view ScenarioName(Scenario scenario) {
  for (const auto& entry : kScenarioNames) {
    if (entry.scenario == scenario) return entry.name;
  }
  return "unknown";
}

std::optional<Scenario> ParseScenario(std::string_view name) {
  for (const auto& entry : kScenarioNames) {
    if (entry.name == name) return entry.scenario;
  }
  return std::nullopt;
}

void ExperimentSpec::validate() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (l < 1) throw std::invalid_argument("l must be >= 1");
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  Alphabet alphabet(r);
  for (double p : p_obf) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("p_obf values must lie in [0, 1]");
    }
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("beta must lie in (0, 1)");
  }
  if (match_probability &&
      !(*match_probability >= 0.0 && *match_probability <= 1.0)) {
    throw std::invalid_argument("match_probability must lie in [0, 1]");
  }

  switch (scenario) {
    case Scenario::kFirstOccurrence:
      CheckedPower(r, l);
      return;
    case Scenario::kBoundsTable:
      CheckG(*this);
      return;
    case Scenario::kFraction:
    case Scenario::kLemma3Count:
      break;
  }
  if (users < 2) throw std::invalid_argument("users must be >= 2");
  if (scenario == Scenario::kLemma3Count && match_probability) return;
  if (r < l + 2) {
    throw std::invalid_argument(
        "r must exceed l by at least 2 so the reduced alphabet r-l has two "
        "symbols");
  }
  if (m < l) throw std::invalid_argument("m must be >= l");
  CheckG(*this);
  if (scenario == Scenario::kLemma3Count && methods.empty()) {
    throw std::invalid_argument("lemma3_count pipeline needs a method");
  }
  for (double p : p_obf) {
    for (Method method : methods) EngineFor(method, p).validate();
  }
  if (source == TraceSourceKind::kIngested) {
    if (ingested.empty()) throw std::invalid_argument("no ingested traces");
    for (std::size_t i = 0; i < ingested.size(); ++i) {
      if (ingested[i].size() < m) {
        throw std::invalid_argument("ingested trace " + std::to_string(i) +
                                    " is shorter than m");
      }
      for (std::size_t k = 0; k < m; ++k) {
        if (ingested[i][k] >= r - l) {
          throw std::invalid_argument(
              "ingested trace " + std::to_string(i) +
              " uses reserved symbol " + std::to_string(ingested[i][k]) +
              "; encode with r-l symbols");
        }
      }
    }
  }
}

EngineConfig ExperimentSpec::EngineFor(Method method, double p) const {
  EngineConfig config;
  config.method = method;
  config.r = r;
  config.p_obf = p;
  config.gamma = gamma;
  config.gap = h;
  config.order = l;
  if (method == Method::kTwoStage) {
    config.stage1_noise = stage1_noise;
    config.stage2_noise = p;
  }
  return config;
}

const Record& ExperimentResult::Find(std::string_view method,
                                     std::string_view metric,
                                     std::optional<double> p_obf) const {
  for (const Record& rec : records) {
    if (rec.method == method && rec.metric == metric &&
        (!p_obf || std::abs(rec.p_obf - *p_obf) < 1e-12)) {
      return rec;
    }
  }
  throw std::out_of_range("no record for method " + std::string(method) +
                          ", metric " + std::string(metric));
}

InsertedPattern insert_unique_pattern(const Trace& base, std::size_t r,
                                      std::size_t l, RandomSource& source,
                                      std::size_t gap) {
  Alphabet alphabet(r);
  if (l < 1 || l >= r) throw std::invalid_argument("need 1 <= l < r");
  if (base.size() < l) throw std::invalid_argument("trace shorter than l");
  Alphabet(r - l).validate(base.symbols(), "base trace (reduced alphabet)");

  InsertedPattern out;
  out.pattern.gap = gap;
  for (std::size_t j = 0; j < l; ++j) {
    out.pattern.symbols.push_back(static_cast<Symbol>(r - l + j));
  }
  out.offset =
      static_cast<std::size_t>(source.uniform_int(base.size() - l + 1));
  std::vector<Symbol> symbols = base.vec();
  std::copy(out.pattern.symbols.begin(), out.pattern.symbols.end(),
            symbols.begin() + static_cast<long>(out.offset));
  out.trace = Trace(std::move(symbols));
  return out;
}

Trace SyntheticTrace(std::size_t m, std::size_t r, RandomSource& source) {
  Alphabet alphabet(r);
  std::vector<Symbol> symbols(m);
  for (Symbol& s : symbols) s = static_cast<Symbol>(source.uniform_int(r));
  return Trace(std::move(symbols));
}

ExperimentResult run_fraction(const ExperimentSpec& spec) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  const auto samples = FractionSamples(spec);
  std::size_t cell = 0;
  for (double p : spec.p_obf) {
    for (Method method : spec.methods) {
      result.records.push_back(MakeRecord(spec, std::string(MethodName(method)),
                                          "fraction", p,
                                          Summarize(samples[cell++])));
    }
  }
  result.wall_seconds = Seconds(start);
  return result;
}

RaceResult run_first_occurrence_race(std::size_t r, std::size_t l,
                                     std::size_t iterations,
                                     std::uint64_t seed, std::size_t workers) {
  const std::uint64_t total = CheckedPower(r, l);
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");

  std::vector<double> xs(iterations), ys(iterations), later(iterations);
  ParallelFor(iterations, workers, [&](std::size_t it) {
    const RandomSource iteration(seed, it);
    RandomSource pattern_src = iteration.derive(kRacePatternStream);
    std::vector<Symbol> pattern(l);
    for (Symbol& s : pattern) s = static_cast<Symbol>(pattern_src.uniform_int(r));

    // X: i.i.d. stream scanned chunk by chunk; the last l-1 symbols of each
    // chunk are carried so matches spanning a boundary are not lost.
    RandomSource iid = iteration.derive(kRaceIidStream);
    std::vector<Symbol> buffer;
    std::size_t consumed = 0;  // stream symbols before buffer[0]
    std::size_t x = 0;
    while (x == 0) {
      const std::size_t old = buffer.size();
      buffer.resize(old + kRaceChunk);
      for (std::size_t i = old; i < buffer.size(); ++i) {
        buffer[i] = static_cast<Symbol>(iid.uniform_int(r));
      }
      const std::size_t at = kernels::FindContiguous(buffer, pattern);
      if (at != kNotFound) {
        x = consumed + at + 1;
      } else {
        const std::size_t keep = std::min(buffer.size(), l - 1);
        consumed += buffer.size() - keep;
        buffer.erase(buffer.begin(),
                     buffer.end() - static_cast<long>(keep));
      }
    }

    // Y: back-to-back rotated shortest superstrings. Every superstring
    // contains the pattern, so the first one decides.
    RandomSource shortest = iteration.derive(kRaceShortestStream);
    const auto rotation = static_cast<std::size_t>(shortest.uniform_int(total));
    const Superstring s = ShortestFromRotation(r, l, rotation);
    const std::size_t at = kernels::FindContiguous(s.symbols, pattern);
    if (at == kNotFound) throw std::logic_error("superstring missed pattern");
    const std::size_t y = at + 1;

    xs[it] = static_cast<double>(x);
    ys[it] = static_cast<double>(y);
    later[it] = x > y ? 1.0 : 0.0;
  });

  RaceResult result;
  const Moments mx = Summarize(xs), my = Summarize(ys), ml = Summarize(later);
  result.mean_iid = mx.mean;
  result.mean_iid_se = mx.std_error;
  result.mean_shortest = my.mean;
  result.mean_shortest_se = my.std_error;
  result.p_iid_later = ml.mean;
  result.p_iid_later_se = ml.std_error;
  return result;
}

ExperimentResult run_lemma3_count(const ExperimentSpec& spec) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  result.match_counts.assign(spec.iterations, 0);
  const Pattern pattern = IdentifyingPattern(spec);
  const double p = spec.p_obf.empty() ? 0.0 : spec.p_obf.front();
  std::optional<EngineConfig> config;
  if (!spec.match_probability) config = spec.EngineFor(spec.methods.front(), p);

  ParallelFor(spec.iterations, spec.workers, [&](std::size_t it) {
    const RandomSource iteration(spec.seed, it);
    std::size_t count = 0;
    if (spec.match_probability) {
      RandomSource draws = iteration.derive(kDataStream);
      for (std::size_t u = 0; u < spec.users; ++u) {
        if (bernoulli(draws, *spec.match_probability)) ++count;
      }
    } else {
      // Target counts as a match of itself; the others match only through
      // noise.
      count = 1;
      const RandomSource noise = iteration.derive(kObfuscationStream);
      const std::vector<Trace> population =
          DrawPopulation(spec, iteration.derive(kDataStream));
      for (std::size_t u = 1; u < spec.users; ++u) {
        RandomSource stream = noise.derive(u);
        if (has_pattern(obfuscate(population[u], *config, stream).symbols(),
                        pattern)) {
          ++count;
        }
      }
    }
    result.match_counts[it] = count;
  });

  const double threshold =
      std::pow(static_cast<double>(spec.users), spec.beta) / 2.0;
  std::vector<double> counts, above;
  for (std::size_t n : result.match_counts) {
    counts.push_back(static_cast<double>(n));
    above.push_back(static_cast<double>(n) >= threshold ? 1.0 : 0.0);
  }
  const std::string method =
      spec.match_probability ? "bernoulli"
                             : std::string(MethodName(spec.methods.front()));
  const double p_col = spec.match_probability ? *spec.match_probability : p;
  result.records.push_back(
      MakeRecord(spec, method, "mean_N", p_col, Summarize(counts)));
  result.records.push_back(
      MakeRecord(spec, method, "p_N_ge_threshold", p_col, Summarize(above)));
  result.wall_seconds = Seconds(start);
  return result;
}

ExperimentResult run_bounds_table(const ExperimentSpec& spec) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;
  for (double p : spec.p_obf) {
    const BoundParams params{spec.m, spec.r, spec.l, spec.h, p};
    result.records.push_back(
        MakeRecord(spec, "sbu", "bound", p, {bound_sbu(params), 0}));
    result.records.push_back(
        MakeRecord(spec, "sl_sbu", "bound", p, {bound_slsbu(params), 0}));
    if (spec.l == 1) {
      result.records.push_back(MakeRecord(spec, "lov", "bound", p,
                                          {lov_bound(spec.m, spec.r, p), 0}));
    }
  }
  result.wall_seconds = Seconds(start);
  return result;
}

ExperimentResult sweep(const ExperimentSpec& spec) {
  if (spec.methods.empty() || spec.p_obf.empty()) return {};
  return run_fraction(spec);
}

ExperimentResult RunExperiment(const ExperimentSpec& spec) {
  switch (spec.scenario) {
    case Scenario::kFraction:
      return sweep(spec);
    case Scenario::kBoundsTable:
      return run_bounds_table(spec);
    case Scenario::kLemma3Count:
      return run_lemma3_count(spec);
    case Scenario::kFirstOccurrence:
      break;
  }
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const RaceResult race = run_first_occurrence_race(
      spec.r, spec.l, spec.iterations, spec.seed, spec.workers);
  ExperimentResult result;
  result.records.push_back(MakeRecord(spec, "iid", "first_occurrence", 1.0,
                                      {race.mean_iid, race.mean_iid_se}));
  result.records.push_back(
      MakeRecord(spec, "sl_sbu", "first_occurrence", 1.0,
                 {race.mean_shortest, race.mean_shortest_se}));
  result.records.push_back(
      MakeRecord(spec, "iid_vs_sl_sbu", "p_iid_later", 1.0,
                 {race.p_iid_later, race.p_iid_later_se}));
  result.wall_seconds = Seconds(start);
  return result;
}

std::vector<double> ParseRealList(std::string_view text) {
  const std::string body = Trim(std::string(text));
  if (body.empty()) throw ParseError("empty list");
  std::vector<double> out;
  if (body.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(Trim(part));
    if (parts.size() != 3) throw ParseError("range must be start:step:stop");
    const double lo = ParseDouble(parts[0]);
    const double step = ParseDouble(parts[1]);
    const double hi = ParseDouble(parts[2]);
    if (!(step > 0) || hi < lo) throw ParseError("invalid range '" + body + "'");
    // Index-based so 0.02:0.02:0.1 yields exactly five points.
    const auto count =
        static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(lo + static_cast<double>(i) * step);
    }
    return out;
  }
  for (const std::string& item : SplitList(body)) out.push_back(ParseDouble(item));
  return out;
}

ExperimentSpec ParseExperimentSpec(std::istream& in,
                                   const std::string& base_dir) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(e.what());
  }
  const auto section = tree.get_child_optional("experiment");
  if (!section) throw ParseError("missing [experiment] section");

  static const char* const kKeys[] = {
      "scenario", "source", "path",  "users",      "m",      "r",
      "l",        "h",      "p_obf", "methods",    "gamma",  "stage1_noise",
      "iterations", "seed", "workers", "match_probability", "beta"};
  for (const auto& [key, value] : *section) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw ParseError("unknown key '" + key + "' in [experiment]");
    }
  }

  ExperimentSpec spec;
  auto get_size = [&](const char* key, std::size_t fallback) -> std::size_t {
    const auto v = section->get_optional<std::string>(key);
    if (!v) return fallback;
    const double d = ParseDouble(Trim(*v));
    if (d < 0 || d != std::floor(d)) {
      throw ParseError(std::string(key) + " must be a non-negative integer");
    }
    return static_cast<std::size_t>(d);
  };
  auto get_real = [&](const char* key, double fallback) -> double {
    const auto v = section->get_optional<std::string>(key);
    return v ? ParseDouble(Trim(*v)) : fallback;
  };

  if (const auto v = section->get_optional<std::string>("scenario")) {
    const auto scenario = ParseScenario(Trim(*v));
    if (!scenario) throw ParseError("unknown scenario '" + *v + "'");
    spec.scenario = *scenario;
  }
  spec.users = get_size("users", spec.users);
  spec.m = get_size("m", spec.m);
  spec.r = get_size("r", spec.r);
  spec.l = get_size("l", spec.l);
  spec.h = get_size("h", spec.h);
  spec.iterations = get_size("iterations", spec.iterations);
  spec.workers = get_size("workers", spec.workers);
  spec.gamma = get_real("gamma", spec.gamma);
  spec.stage1_noise = get_real("stage1_noise", spec.stage1_noise);
  spec.beta = get_real("beta", spec.beta);
  if (const auto v = section->get_optional<std::string>("seed")) {
    try {
      spec.seed = std::stoull(Trim(*v));
    } catch (const std::exception&) {
      throw ParseError("seed must be an unsigned integer");
    }
  }
  if (const auto v = section->get_optional<std::string>("match_probability")) {
    spec.match_probability = ParseDouble(Trim(*v));
  }
  if (const auto v = section->get_optional<std::string>("p_obf")) {
    spec.p_obf = ParseRealList(*v);
  }
  if (const auto v = section->get_optional<std::string>("methods")) {
    spec.methods.clear();
    for (const std::string& name : SplitList(*v)) {
      const auto method = ParseMethod(name);
      if (!method) throw ParseError("unknown method '" + name + "'");
      spec.methods.push_back(*method);
    }
  }
  const std::string source =
      Trim(section->get<std::string>("source", "synthetic_iid"));
  if (source == "synthetic_iid") {
    spec.source = TraceSourceKind::kSyntheticIid;
  } else if (source == "ingested") {
    spec.source = TraceSourceKind::kIngested;
    const auto path = section->get_optional<std::string>("path");
    if (!path) throw ParseError("source = ingested requires path");
    std::filesystem::path resolved(Trim(*path));
    if (resolved.is_relative()) resolved = std::filesystem::path(base_dir) / resolved;
    spec.ingested_path = resolved.string();
    spec.ingested = ReadTraces(spec.ingested_path);
  } else {
    throw ParseError("unknown source '" + source + "'");
  }
  return spec;
}

ExperimentSpec LoadExperimentSpec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  const auto parent = std::filesystem::path(path).parent_path();
  return ParseExperimentSpec(in, parent.empty() ? "." : parent.string());
}

void WriteResultCsv(std::ostream& out, const ExperimentResult& result) {
  out << "scenario,method,metric,m,r,l,h,p_obf,iterations,users,estimate,"
         "std_error\n";
  const auto old_precision = out.precision(10);
  for (const Record& rec : result.records) {
    out << rec.scenario << ',' << rec.method << ',' << rec.metric << ','
        << rec.m << ',' << rec.r << ',' << rec.l << ',' << rec.h << ','
        << rec.p_obf << ',' << rec.iterations << ',' << rec.users << ','
        << rec.estimate << ',' << rec.std_error << '\n';
  }
  out.precision(old_precision);
}

}  // namespace seqobf
