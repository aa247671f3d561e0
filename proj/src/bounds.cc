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

#include "seqobf/bounds.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "seqobf/core.h"
#include "seqobf/superstring.h"

namespace seqobf {

long long BoundParams::G() const {
  return static_cast<long long>(m) -
         static_cast<long long>(h) * (static_cast<long long>(l) - 1);
}

void BoundParams::validate() const {
  Alphabet alphabet(r);
  if (l < 1) throw std::invalid_argument("pattern length l must be >= 1");
  if (h < 1) throw std::invalid_argument("gap h must be >= 1");
  if (!(p_obf >= 0.0 && p_obf <= 1.0)) {
    throw std::invalid_argument("p_obf must lie in [0, 1]");
  }
  if (G() <= 0) {
    throw std::invalid_argument("G = m - h(l-1) = " + std::to_string(G()) +
                                " must be positive");
  }
}

namespace {

// prefactor * sum_{a=0}^{limit} [1 - exp(-(1 - a*step/(Gp))^2 Gp/2)],
// with limit = min(r^l - 1, floor(Gp/step)).
double ChernoffBound(const BoundParams& params, double step) {
  params.validate();
  const double p = params.p_obf;
  if (p == 0.0) return 0.0;
  const double r_pow_l = std::pow(static_cast<double>(params.r),
                                  static_cast<double>(params.l));
  const double gp = static_cast<double>(params.G()) * p;
  const double prefactor =
      std::pow(1.0 - std::pow(1.0 - p, static_cast<double>(params.h)),
               static_cast<double>(params.l - 1)) /
      r_pow_l;
  const double limit = std::min(r_pow_l - 1.0, std::floor(gp / step));
  if (limit < 0) return 0.0;
  const auto last = static_cast<long long>(limit);
  // Terms grow as a decreases; add smallest first.
  double sum = 0;
  for (long long a = last; a >= 0; --a) {
    const double delta = 1.0 - static_cast<double>(a) * step / gp;
    sum += -std::expm1(-0.5 * delta * delta * gp);
  }
  return std::clamp(prefactor * sum, 0.0, 1.0);
}

}  // namespace

double bound_sbu(const BoundParams& params) {
  return ChernoffBound(params, static_cast<double>(params.l));
}

double bound_slsbu(const BoundParams& params) {
  return ChernoffBound(params, 1.0);
}

Schedule schedule(const ScheduleParams& params) {
  if (params.l < 2) throw std::invalid_argument("schedule requires l >= 2");
  if (params.h < 1) throw std::invalid_argument("gap h must be >= 1");
  if (!(params.beta > 0.0 && params.beta < 1.0)) {
    throw std::invalid_argument("beta must lie in (0, 1)");
  }
  const double exponent =
      (1.0 - params.beta) / static_cast<double>(params.l - 1);
  if (!(params.theta > 0.0 && params.theta < exponent)) {
    throw std::invalid_argument("theta must lie in (0, (1-beta)/(l-1)) = (0, " +
                                std::to_string(exponent) + ")");
  }
  if (!(params.n >= 1.0) || !(params.m >= 1.0)) {
    throw std::invalid_argument("n and m must be >= 1");
  }
  const double ld = static_cast<double>(params.l);
  Schedule s;
  s.d = params.m * std::pow(params.n, -exponent);
  s.b = std::pow(params.n, -exponent + params.theta);
  s.r_min = std::pow(s.d * std::pow(params.n, params.theta), 1.0 / ld);
  s.r_max = std::pow(s.d * std::pow(params.n, params.theta * ld), 1.0 / ld);
  s.m_b = params.m * s.b;
  s.m_b_ok = s.m_b >= 9.0;
  s.lemma3_threshold = std::pow(params.n, params.beta) / 2.0;
  s.target_probability = std::pow(params.n, -(1.0 - params.beta));
  return s;
}

FirstOccurrenceExpectation expected_first_occurrence(std::size_t r,
                                                     std::size_t l) {
  const auto total = static_cast<double>(CheckedPower(r, l));
  return {(total + 1.0) / 2.0, total};
}

}  // namespace seqobf
