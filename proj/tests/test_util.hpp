// Copyright 2026 The Svetlichny Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "svetlichny/behavior.hpp"
#include "svetlichny/bell_expr.hpp"

namespace svetlichny::testing {

/// Random behavior with each input row drawn uniformly from the simplex.
inline Behavior random_behavior(int m, int d, std::mt19937_64 &rng) {
  std::size_t outcomes = 1;
  for (int j = 0; j < m; ++j) outcomes *= static_cast<std::size_t>(d);
  const std::size_t inputs = std::size_t{1} << m;
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> probs(inputs * outcomes);
  for (std::size_t x = 0; x < inputs; ++x) {
    double total = 0.0;
    for (std::size_t a = 0; a < outcomes; ++a) total += probs[x * outcomes + a] = exp1(rng);
    double sum = 0.0;
    for (std::size_t a = 0; a + 1 < outcomes; ++a) sum += probs[x * outcomes + a] /= total;
    probs[x * outcomes + outcomes - 1] = std::max(0.0, 1.0 - sum);
  }
  return Behavior(m, d, std::move(probs));
}

/// Independent reading of one term: outcome digits are extracted here rather than via the
/// library, and brackets/correlators follow their textbook definitions.
inline double oracle_term(const BellExpression &e, const Term &t, const Behavior &b) {
  const int m = e.parties();
  const int d = e.outcomes();
  double value = 0.0;
  const std::size_t outcomes = b.outcome_count();
  for (std::size_t a = 0; a < outcomes; ++a) {
    std::size_t rest = a;
    int sum = 0;
    for (int j = 0; j < m; ++j) {
      sum += static_cast<int>(rest % static_cast<std::size_t>(d));
      rest /= static_cast<std::size_t>(d);
    }
    double w;
    if (const Bracket *br = std::get_if<Bracket>(&t.weight)) {
      int x = sum + br->offset;
      if (br->star) x = -x;
      w = ((x % d) + d) % d;
    } else {
      w = std::get<Correlator>(t.weight).coeff * (sum % 2 == 0 ? 1.0 : -1.0);
    }
    value += w * b(t.inputs, static_cast<OutcomeIndex>(a));
  }
  return value;
}

inline double oracle_evaluate(const BellExpression &e, const Behavior &b) {
  double total = 0.0;
  for (const Term &t : e.terms()) total += oracle_term(e, t, b);
  return total;
}

/// Deterministic behavior where party j outputs out[j][x_j].
inline Behavior local_deterministic(int m, int d, const std::vector<std::array<int, 2>> &out) {
  std::size_t outcomes = 1;
  for (int j = 0; j < m; ++j) outcomes *= static_cast<std::size_t>(d);
  std::vector<double> probs((std::size_t{1} << m) * outcomes, 0.0);
  for (std::uint32_t x = 0; x < (1u << m); ++x) {
    std::size_t a = 0;
    for (int j = 0; j < m; ++j) a = a * static_cast<std::size_t>(d) + static_cast<std::size_t>(out[j][(x >> (m - 1 - j)) & 1u]);
    probs[x * outcomes + a] = 1.0;
  }
  return Behavior(m, d, std::move(probs));
}

}  // namespace svetlichny::testing
