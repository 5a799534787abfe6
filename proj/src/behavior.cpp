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

#include "svetlichny/behavior.hpp"

#include <cmath>
#include <string>

#include "svetlichny/errors.hpp"

namespace svetlichny {

namespace {
constexpr double kNormalizationTolerance = 1e-12;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > UINT64_MAX / base) {
      return UINT64_MAX;
    }
    result *= base;
  }
  return result;
}

int outcome_digit(OutcomeIndex a, int party, int m, int d) {
  for (int j = m - 1; j > party; --j) {
    a /= static_cast<OutcomeIndex>(d);
  }
  return static_cast<int>(a % static_cast<OutcomeIndex>(d));
}

int digit_sum(OutcomeIndex a, int m, int d) {
  int sum = 0;
  for (int j = 0; j < m; ++j) {
    sum += static_cast<int>(a % static_cast<OutcomeIndex>(d));
    a /= static_cast<OutcomeIndex>(d);
  }
  return sum;
}

Behavior::Behavior(int m, int d, std::vector<double> probs) : m_(m), d_(d), probs_(std::move(probs)) {
  if (m < 1 || m > kMaxParties) {
    throw InvalidArgument("behavior: party count must be in [1, " + std::to_string(kMaxParties) + "]");
  }
  if (d < 2) {
    throw InvalidArgument("behavior: outcome count must be at least 2");
  }
  outcome_count_ = static_cast<std::size_t>(checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(m)));
  if (probs_.size() != input_count() * outcome_count_) {
    throw InvalidArgument("behavior: expected " + std::to_string(input_count() * outcome_count_) +
                          " probabilities, got " + std::to_string(probs_.size()));
  }
  for (std::size_t x = 0; x < input_count(); ++x) {
    double total = 0.0;
    for (std::size_t a = 0; a < outcome_count_; ++a) {
      double p = probs_[x * outcome_count_ + a];
      if (!std::isfinite(p) || p < -kNormalizationTolerance || p > 1.0 + kNormalizationTolerance) {
        throw InvalidArgument("behavior: probability out of [0,1] at input " + std::to_string(x));
      }
      total += p;
    }
    if (std::abs(total - 1.0) > kNormalizationTolerance) {
      throw InvalidArgument("behavior: probabilities for input " + std::to_string(x) + " sum to " +
                            std::to_string(total));
    }
  }
}

}  // namespace svetlichny
