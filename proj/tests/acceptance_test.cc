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

// Acceptance harness. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/distributions/binomial.hpp>

#include "seqobf/bounds.h"
#include "seqobf/core.h"
#include "seqobf/detect.h"
#include "seqobf/engines.h"
#include "seqobf/sim.h"
#include "seqobf/superstring.h"
#include "reference_values.h"
#include "test_oracles.h"

namespace seqobf {
namespace {

using testing::IntPow;

// Collects failure messages for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  std::ostringstream& note() { return note_; }
  std::string summary() const { return note_.str(); }

 private:
  std::vector<std::string> failures_;
  std::ostringstream note_;
};

std::size_t Workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string Fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// --- 1 ----------------------------------------------------------------------

void SuperstringConstruction(Check& c) {
  RandomSource src(101, 0);
  int cases = 0;
  for (std::size_t r = 2; r <= 4; ++r) {
    for (std::size_t l = 1; l <= 3; ++l) {
      for (int trial = 0; trial < 5; ++trial) {
        const Superstring s = shortest_superstring(r, l, src);
        const std::string tag =
            "(" + std::to_string(r) + "," + std::to_string(l) + ")";
        c.Expect(s.size() == IntPow(r, l) + l - 1, tag + " length");
        c.Expect(verify_superstring(s.symbols, r, l), tag + " coverage");
        ++cases;
      }
    }
  }
  for (std::size_t l : {2, 3}) {
    const std::size_t f = IntPow(2, l) + l - 1;
    c.Expect(!testing::AnySuperstringOfLength(2, l, f - 1),
             "a (2," + std::to_string(l) + ") superstring shorter than " +
                 std::to_string(f) + " exists");
    c.Expect(testing::AnySuperstringOfLength(2, l, f),
             "exhaustive search found no superstring of length " +
                 std::to_string(f));
  }
  c.note() << cases << " constructions verified; minimality at (2,2),(2,3)";
}

// --- 2 ----------------------------------------------------------------------

void BoundCells(Check& c) {
  double worst = 0;
  for (const auto& cell : testing::kBoundCells) {
    const BoundParams params{cell.m, cell.r, cell.l, cell.h, cell.p};
    const double eps = 100 * bound_sbu(params);
    const double eps2 = 100 * bound_slsbu(params);
    const double err =
        std::max(std::abs(eps - cell.eps_percent),
                 std::abs(eps2 - cell.eps_prime_percent));
    worst = std::max(worst, err);
    std::ostringstream tag;
    tag << "m=" << cell.m << " l=" << cell.l << " h=" << cell.h
        << " p=" << cell.p << ": " << Fmt(eps) << "% / " << Fmt(eps2)
        << "% vs " << cell.eps_percent << "% / " << cell.eps_prime_percent
        << "%";
    c.Expect(err <= 0.01, tag.str());
  }
  c.note() << "12 cells, max deviation " << Fmt(worst) << " pp";
}

// --- 3 ----------------------------------------------------------------------

void FirstOccurrenceRace(Check& c) {
  const std::pair<std::size_t, std::size_t> rows[] = {{10, 2}, {20, 2}, {10, 3}};
  std::uint64_t seed = 301;
  for (const auto& [r, l] : rows) {
    const RaceResult race =
        run_first_occurrence_race(r, l, 100000, seed++, Workers());
    const double rl = static_cast<double>(IntPow(r, l));
    const double ey = (rl + 1) / 2;
    const std::string tag =
        "(" + std::to_string(r) + "," + std::to_string(l) + ")";
    c.Expect(std::abs(race.mean_iid - rl) <= 0.02 * rl,
             tag + " E(X)=" + Fmt(race.mean_iid, 2));
    c.Expect(std::abs(race.mean_shortest - ey) <= 0.02 * ey,
             tag + " E(Y)=" + Fmt(race.mean_shortest, 2));
    c.Expect(race.p_iid_later >= 0.61 && race.p_iid_later <= 0.65,
             tag + " P(X>Y)=" + Fmt(race.p_iid_later));
    c.note() << tag << " E(X)=" << Fmt(race.mean_iid, 1)
             << " E(Y)=" << Fmt(race.mean_shortest, 1)
             << " P(X>Y)=" << Fmt(race.p_iid_later) << "; ";
  }
}

// --- 4 ----------------------------------------------------------------------

void FractionRows(Check& c) {
  std::uint64_t seed = 401;
  for (const auto& row : testing::kFractionRows) {
    ExperimentSpec spec;
    spec.users = 100;
    spec.iterations = 1000;
    spec.m = row.m;
    spec.r = row.r;
    spec.l = row.l;
    spec.h = row.h;
    spec.p_obf = {row.p};
    spec.methods = {Method::kIid, Method::kSlSbu};
    spec.seed = seed++;
    spec.workers = Workers();
    const auto result = run_fraction(spec);
    const double iid = result.Find("iid", "fraction").estimate;
    const double sl = result.Find("sl_sbu", "fraction").estimate;
    std::ostringstream tag;
    tag << "h=" << row.h << " p=" << row.p << ": iid " << Fmt(iid)
        << " (ref " << row.iid << "), sl_sbu " << Fmt(sl) << " (ref "
        << row.shortest << ")";
    c.Expect(std::abs(iid - row.iid) <= 0.03, tag.str() + " iid off");
    c.Expect(std::abs(sl - row.shortest) <= 0.03, tag.str() + " sl_sbu off");
    c.Expect(sl >= iid, tag.str() + " ordering");
    c.note() << tag.str() << "; ";
  }
}

// --- 5 ----------------------------------------------------------------------

void OrderingAtOrderOne(Check& c) {
  ExperimentSpec spec;
  spec.users = 100;
  spec.iterations = 200;
  spec.m = 1000;
  spec.r = 21;
  spec.l = 1;
  spec.h = 10;
  spec.p_obf = ParseRealList("0.02:0.02:0.1");
  spec.methods = {Method::kIid, Method::kSlSbu, Method::kLov, Method::kPlov,
                  Method::kManp};
  spec.seed = 501;
  spec.workers = Workers();
  const auto result = sweep(spec);
  for (double p : spec.p_obf) {
    const Record& lov = result.Find("lov", "fraction", p);
    c.note() << "p=" << Fmt(p, 2) << ":";
    for (Method m : spec.methods) {
      const Record& rec = result.Find(MethodName(m), "fraction", p);
      c.note() << ' ' << rec.method << '=' << Fmt(rec.estimate, 3);
      const double margin =
          3 * std::hypot(lov.std_error, rec.std_error);
      c.Expect(lov.estimate + margin >= rec.estimate,
               "p=" + Fmt(p, 2) + " lov " + Fmt(lov.estimate) + " < " +
                   rec.method + " " + Fmt(rec.estimate));
    }
    c.note() << "; ";
    const Record& iid = result.Find("iid", "fraction", p);
    const Record& sl = result.Find("sl_sbu", "fraction", p);
    c.Expect(sl.estimate + 3 * std::hypot(sl.std_error, iid.std_error) >=
                 iid.estimate,
             "p=" + Fmt(p, 2) + " sl_sbu below iid");
  }
}

// --- 6 ----------------------------------------------------------------------

std::vector<Symbol> RandomSymbols(std::size_t n, std::size_t r,
                                  RandomSource& src) {
  std::vector<Symbol> v(n);
  for (auto& s : v) s = static_cast<Symbol>(src.uniform_int(r));
  return v;
}

void DetectionSuite(Check& c) {
  RandomSource src(601, 0);
  const std::size_t gaps[] = {1, 2, 3, 5, kUnboundedGap};
  int mismatches = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t m = src.uniform_int(31);
    const std::size_t r = 2 + src.uniform_int(3);
    const std::size_t l = 1 + src.uniform_int(3);
    const std::size_t h = gaps[src.uniform_int(5)];
    const auto trace = RandomSymbols(m, r, src);
    const auto pat = RandomSymbols(l, r, src);
    if (has_pattern(trace, Pattern{pat, h}) !=
        testing::BruteHasPattern(trace, pat, h)) {
      ++mismatches;
    }
  }
  c.Expect(mismatches == 0,
           "detection disagrees with brute force on " +
               std::to_string(mismatches) + " cases");
}

void PlovSuite(Check& c) {
  RandomSource src(602, 0);
  int invalid = 0, not_equivariant = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t r = 2 + src.uniform_int(12);
    std::vector<std::uint64_t> counts(r);
    for (auto& n : counts) n = src.uniform_int(50);
    const double gamma = 0.01 + src.uniform01();
    const auto p = plov_distribution(counts, gamma);
    const double sum = std::accumulate(p.begin(), p.end(), 0.0);
    const bool valid =
        p.size() == r && std::abs(sum - 1) <= 1e-12 &&
        std::all_of(p.begin(), p.end(), [](double x) { return x >= 0; });
    if (!valid) ++invalid;
    const Permutation perm = RandomPermutation(r, src);
    std::vector<std::uint64_t> permuted(r);
    for (std::size_t i = 0; i < r; ++i) permuted[perm.image(i)] = counts[i];
    const auto q = plov_distribution(permuted, gamma);
    for (std::size_t i = 0; i < r; ++i) {
      if (std::abs(q[perm.image(i)] - p[i]) > 1e-12) {
        ++not_equivariant;
        break;
      }
    }
  }
  c.Expect(invalid == 0, std::to_string(invalid) + " invalid PLOV vectors");
  c.Expect(not_equivariant == 0,
           std::to_string(not_equivariant) + " PLOV equivariance failures");
}

void MaskSuite(Check& c) {
  const Method methods[] = {Method::kIid,  Method::kSbu, Method::kSlSbu,
                            Method::kLov,  Method::kPlov, Method::kManp,
                            Method::kTwoStage};
  RandomSource data(603, 0);
  const Trace trace = SyntheticTrace(2000, 6, data);
  std::vector<bool> reference_mask;
  for (Method method : methods) {
    EngineConfig config;
    config.method = method;
    config.r = 6;
    config.order = 2;
    config.gap = 4;
    config.p_obf = 0.3;
    config.stage1_noise = 0.1;
    config.stage2_noise = 0.2;
    RandomSource src(604, 0);
    const Obfuscation o = ObfuscateWithMask(trace, config, src);
    bool kept = o.output.size() == trace.size() && o.mask.size() == trace.size();
    for (std::size_t i = 0; kept && i < trace.size(); ++i) {
      if (!o.mask[i] && o.output[i] != trace[i]) kept = false;
    }
    c.Expect(kept, std::string(MethodName(method)) +
                       " altered a position with W = 0");
    if (method == Method::kTwoStage) continue;
    if (reference_mask.empty()) {
      reference_mask = o.mask;
    } else {
      c.Expect(o.mask == reference_mask,
               std::string(MethodName(method)) + " mask depends on method");
    }
  }
}

void TouchRateSuite(Check& c) {
  const double a = 0.1, b = 0.1;
  const double psi = TwoStageNoiseLevel(a, b);
  const std::size_t m = 200000;
  RandomSource data(605, 0);
  const Trace trace = SyntheticTrace(m, 5, data);
  RandomSource src(606, 0);
  const Obfuscation o = TwoStageWithMask(trace, 5, a, b, 2, src);
  const double rate =
      static_cast<double>(std::count(o.mask.begin(), o.mask.end(), true)) / m;
  const double sigma = std::sqrt(psi * (1 - psi) / m);
  c.Expect(std::abs(psi - 0.19) < 1e-15, "psi(0.1,0.1) != 0.19");
  c.Expect(std::abs(rate - psi) <= 3 * sigma,
           "touch rate " + Fmt(rate, 5) + " vs " + Fmt(psi, 5));
}

void RotationSuite(Check& c) {
  RandomSource src(607, 0);
  const std::size_t r = 3, l = 2;
  std::vector<std::uint64_t> counts(IntPow(r, l), 0);
  for (int i = 0; i < 90000; ++i) {
    const Superstring s = shortest_superstring(r, l, src);
    ++counts[s.symbols[0] * r + s.symbols[1]];
  }
  const double pv = testing::UniformChiSquarePValue(counts);
  c.Expect(pv > 1e-3, "rotation chi-square p = " + Fmt(pv, 6));
  c.note() << "rotation chi-square p=" << Fmt(pv, 3) << "; ";
}

void FractionBoundSuite(Check& c) {
  RandomSource grid(608, 0);
  for (int point = 0; point < 10; ++point) {
    ExperimentSpec spec;
    spec.users = 50;
    spec.iterations = 40;
    spec.l = 2 + grid.uniform_int(2);
    spec.r = 6 + grid.uniform_int(10);
    spec.h = 2 + grid.uniform_int(9);
    spec.m = 200 + grid.uniform_int(601);
    spec.p_obf = {0.05 + 0.25 * grid.uniform01()};
    spec.methods = {Method::kSbu, Method::kSlSbu};
    spec.seed = 700 + point;
    spec.workers = Workers();
    const auto result = run_fraction(spec);
    const BoundParams params{spec.m, spec.r, spec.l, spec.h, spec.p_obf[0]};
    const Record& sbu = result.Find("sbu", "fraction");
    const Record& sl = result.Find("sl_sbu", "fraction");
    std::ostringstream tag;
    tag << "m=" << spec.m << " r=" << spec.r << " l=" << spec.l
        << " h=" << spec.h << " p=" << Fmt(spec.p_obf[0], 3);
    c.Expect(sbu.estimate + 3 * sbu.std_error >= bound_sbu(params),
             tag.str() + " sbu " + Fmt(sbu.estimate) + " < bound " +
                 Fmt(bound_sbu(params)));
    c.Expect(sl.estimate + 3 * sl.std_error >= bound_slsbu(params),
             tag.str() + " sl_sbu " + Fmt(sl.estimate) + " < bound " +
                 Fmt(bound_slsbu(params)));
  }
}

void PropertySuites(Check& c) {
  DetectionSuite(c);
  PlovSuite(c);
  MaskSuite(c);
  TouchRateSuite(c);
  RotationSuite(c);
  FractionBoundSuite(c);
  c.note() << "detection, PLOV, mask, touch rate, rotation, fraction>=bound";
}

// --- 7 ----------------------------------------------------------------------

void ScheduleAndMatchCount(Check& c) {
  const Schedule s = schedule({1e4, 2, 10, 0.5, 0.25, 1e4});
  c.Expect(std::abs(s.d - 100) < 1e-9, "d");
  c.Expect(std::abs(s.b - 0.1) < 1e-12, "b");
  c.Expect(std::abs(s.m_b - 1000) < 1e-9 && s.m_b_ok, "m_b");
  c.Expect(std::abs(s.r_min - std::sqrt(1000.0)) < 1e-9, "r_min");
  c.Expect(std::abs(s.r_max - 100) < 1e-9, "r_max");
  c.Expect(std::abs(s.lemma3_threshold - 50) < 1e-9, "threshold");
  c.Expect(std::abs(s.target_probability - 0.01) < 1e-15, "target");
  RandomSource src(701, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    ScheduleParams params;
    params.n = 10 + 1e6 * src.uniform01();
    params.l = 2 + src.uniform_int(3);
    params.beta = 0.05 + 0.9 * src.uniform01();
    params.theta =
        (1 - params.beta) / (params.l - 1) * (0.05 + 0.9 * src.uniform01());
    params.m = 100 + 1e5 * src.uniform01();
    const Schedule t = schedule(params);
    if (!(t.r_min <= t.r_max * (1 + 1e-12))) {
      c.Expect(false, "r_min > r_max");
      break;
    }
  }

  namespace bm = boost::math;
  // Frozen high-precision value for P(N >= 50), N ~ Bin(1e4, 0.01).
  const double frozen = 0.99999998968751618184;
  const double tail = bm::cdf(bm::complement(bm::binomial(1e4, 0.01), 49.0));
  c.Expect(std::abs(tail - frozen) < 1e-12, "binomial tail oracle drift");

  struct Case {
    std::size_t n;
    double q, beta;
  };
  for (const Case& k : {Case{10000, 0.01, 0.5}, Case{400, 0.15, 0.8}}) {
    ExperimentSpec spec;
    spec.scenario = Scenario::kLemma3Count;
    spec.users = k.n;
    spec.match_probability = k.q;
    spec.beta = k.beta;
    spec.iterations = 4000;
    spec.seed = 702;
    spec.workers = Workers();
    const auto result = run_lemma3_count(spec);
    const double threshold = std::pow(static_cast<double>(k.n), k.beta) / 2;
    const double below = std::ceil(threshold) - 1;
    const double oracle =
        bm::cdf(bm::complement(bm::binomial(k.n, k.q), below));
    const double freq =
        result.Find("bernoulli", "p_N_ge_threshold").estimate;
    const double sigma = std::sqrt(oracle * (1 - oracle) / spec.iterations);
    c.Expect(std::abs(freq - oracle) <= 3 * sigma + 1.0 / spec.iterations,
             "n=" + std::to_string(k.n) + " P(N>=" + Fmt(threshold, 2) +
                 ") " + Fmt(freq) + " vs oracle " + Fmt(oracle));
    const double mean = result.Find("bernoulli", "mean_N").estimate;
    const double mean_sigma =
        std::sqrt(k.n * k.q * (1 - k.q) / spec.iterations);
    c.Expect(std::abs(mean - k.n * k.q) <= 3 * mean_sigma,
             "n=" + std::to_string(k.n) + " mean N " + Fmt(mean, 2));
    c.note() << "n=" << k.n << " P(N>=thr)=" << Fmt(freq)
             << " oracle " << Fmt(oracle) << "; ";
  }
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Check&)> run;
};

}  // namespace
}  // namespace seqobf

int main() {
  using seqobf::Check;
  const seqobf::Criterion criteria[] = {
      {1, "shortest superstring construction", seqobf::SuperstringConstruction},
      {2, "closed-form bound cells", seqobf::BoundCells},
      {3, "first-occurrence race", seqobf::FirstOccurrenceRace},
      {4, "synthetic fraction rows", seqobf::FractionRows},
      {5, "order-one method ordering", seqobf::OrderingAtOrderOne},
      {6, "property suites", seqobf::PropertySuites},
      {7, "schedule and match-count tail", seqobf::ScheduleAndMatchCount},
  };
  int failed = 0;
  for (const auto& criterion : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    std::printf("%s criterion %d: %s (%.1fs) %s\n",
                check.ok() ? "PASS" : "FAIL", criterion.id, criterion.name,
                secs, check.summary().c_str());
    for (const auto& failure : check.failures()) {
      std::printf("    %s\n", failure.c_str());
    }
    std::fflush(stdout);
    if (!check.ok()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
