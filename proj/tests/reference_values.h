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

// Reference values the bounds and simulator are checked against.
// Bound cells are percentages printed to two decimals.

#ifndef SEQOBF_TESTS_REFERENCE_VALUES_H_
#define SEQOBF_TESTS_REFERENCE_VALUES_H_

#include <cstddef>

namespace seqobf::testing {

struct BoundCell {
  std::size_t m, r, l, h;
  double p;
  double eps_percent;        // concatenation superstring
  double eps_prime_percent;  // shortest superstring
};

inline constexpr BoundCell kBoundCells[] = {
    {1000, 20, 3, 10, 0.10, 0.15, 0.45},
    {1000, 20, 3, 8, 0.10, 0.12, 0.35},
    {1000, 20, 3, 10, 0.15, 0.36, 1.06},
    {1000, 20, 3, 10, 0.30, 1.07, 3.22},
    {4000, 20, 3, 10, 0.10, 0.66, 1.98},
    {10000, 20, 3, 10, 0.10, 1.69, 5.08},
    {1000, 20, 2, 10, 0.10, 7.12, 14.17},
    {1000, 20, 2, 8, 0.10, 6.24, 12.41},
    {1000, 20, 2, 10, 0.15, 13.47, 26.84},
    {1000, 20, 2, 10, 0.30, 33.57, 67.02},
    {2000, 20, 2, 10, 0.10, 14.84, 29.60},
    {4000, 20, 2, 10, 0.10, 30.52, 60.97},
};

struct FractionRow {
  std::size_t m, r, l, h;
  double p;
  double iid;
  double shortest;
};

// Desk-scale synthetic fraction rows (m = 1000, r = 20, l = 2).
inline constexpr FractionRow kFractionRows[] = {
    {1000, 20, 2, 10, 0.10, 0.2185, 0.7380},
    {1000, 20, 2, 5, 0.10, 0.1223, 0.3733},
    {1000, 20, 2, 10, 0.05, 0.0673, 0.2203},
};

}  // namespace seqobf::testing

#endif  // SEQOBF_TESTS_REFERENCE_VALUES_H_
