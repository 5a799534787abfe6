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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace svetlichny {

/// Joint input of all parties; party 1 occupies the most significant bit and a set
/// bit selects the primed measurement.
using InputIndex = std::uint32_t;

/// Joint outcome of a group of parties, written base d with the first party most significant.
using OutcomeIndex = std::uint32_t;

/// Largest party count supported by the dense representations.
inline constexpr int kMaxParties = 12;

inline int input_bit(InputIndex x, int party, int m) { return static_cast<int>((x >> (m - 1 - party)) & 1u); }

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exponent);

/// Digit of `party` inside a base-d joint outcome of `m` parties.
int outcome_digit(OutcomeIndex a, int party, int m, int d);

/// Sum of the base-d digits of a joint outcome of `m` parties.
int digit_sum(OutcomeIndex a, int m, int d);

/// Joint conditional probability table P(a_1..a_m | x_1..x_m).
///
/// Storage is input-major: probs[x * d^m + a].
class Behavior {
 public:
  /// Validates entries in [0,1] and per-input normalization within 1e-12.
  Behavior(int m, int d, std::vector<double> probs);

  int parties() const { return m_; }
  int outcomes() const { return d_; }
  std::size_t input_count() const { return std::size_t{1} << m_; }
  std::size_t outcome_count() const { return outcome_count_; }

  double operator()(InputIndex x, OutcomeIndex a) const { return probs_[x * outcome_count_ + a]; }
  std::span<const double> probs() const { return probs_; }
  std::span<const double> row(InputIndex x) const {
    return std::span<const double>(probs_).subspan(x * outcome_count_, outcome_count_);
  }

  bool same_shape(const Behavior &other) const { return m_ == other.m_ && d_ == other.d_; }

  friend bool operator==(const Behavior &, const Behavior &) = default;

 private:
  int m_;
  int d_;
  std::size_t outcome_count_;
  std::vector<double> probs_;
};

}  // namespace svetlichny
