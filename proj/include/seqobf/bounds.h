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

// Closed-form lower bounds on the probability that another user's
// obfuscated trace carries a given length-l pattern, plus the parameter
// schedule under which the shortest-superstring bound decays only as
// n^-(1-beta).

#ifndef SEQOBF_BOUNDS_H_
#define SEQOBF_BOUNDS_H_

#include <cstddef>
#include <cstdint>

namespace seqobf {

struct BoundParams {
  std::size_t m = 0;
  std::size_t r = 2;
  std::size_t l = 1;
  std::size_t h = 1;
  double p_obf = 0;

  // G = m - h(l-1); may be <= 0.
  long long G() const;
  void validate() const;
};

// Concatenation superstring:
//   eps = (1-(1-p)^h)^(l-1) / r^l
//         * sum_{a=0}^{min(r^l-1, floor(Gp/l))} [1 - exp(-d_a^2 G p / 2)],
//   d_a = 1 - a l / (G p).
// Throws std::invalid_argument when G <= 0.
double bound_sbu(const BoundParams& params);

// Shortest superstring: as bound_sbu with d'_a = 1 - a / (G p) and upper
// limit floor(G p).
double bound_slsbu(const BoundParams& params);

struct ScheduleParams {
  double n = 0;
  std::size_t l = 2;
  std::size_t h = 1;
  double beta = 0.5;
  double theta = 0.25;
  double m = 0;
};

struct Schedule {
  double d = 0;          // m * n^-((1-beta)/(l-1))
  double b = 0;          // p_obf = n^(-(1-beta)/(l-1) + theta)
  double r_min = 0;      // (d n^theta)^(1/l)
  double r_max = 0;      // (d n^(theta l))^(1/l)
  double m_b = 0;        // m * b
  bool m_b_ok = false;   // m * b >= 9
  double lemma3_threshold = 0;  // n^beta / 2
  double target_probability = 0;  // n^-(1-beta)
};

// Throws std::invalid_argument for l < 2, beta outside (0,1) or theta
// outside (0, (1-beta)/(l-1)).
Schedule schedule(const ScheduleParams& params);

struct FirstOccurrenceExpectation {
  double shortest = 0;  // (r^l + 1) / 2
  double iid_lower = 0;  // r^l
};

FirstOccurrenceExpectation expected_first_occurrence(std::size_t r,
                                                     std::size_t l);

}  // namespace seqobf

#endif  // SEQOBF_BOUNDS_H_
