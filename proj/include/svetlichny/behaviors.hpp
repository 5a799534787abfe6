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

/**
 * @file
 * Deterministic vertices of the local and bipartition models and exact bound
 * certification over them.
 *
 * Every vertex is a deterministic behavior, stored compactly as the joint outcome
 * it assigns to each input combination (a DeterministicPoint). Expression values on
 * vertices are computed with exact integer arithmetic.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "svetlichny/behavior.hpp"
#include "svetlichny/bell_expr.hpp"

namespace svetlichny {

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

struct EnumerationOptions {
  std::uint64_t cap = kDefaultEnumerationCap;
  unsigned threads = 1;
};

Behavior uniform_behavior(int m, int d);

/// w * b1 + (1 - w) * b2.
Behavior mix(double w, const Behavior &b1, const Behavior &b2);

/// Joint outcome a(x) for every input combination x of a deterministic behavior.
using DeterministicPoint = std::vector<OutcomeIndex>;

Behavior behavior_from_point(const DeterministicPoint &point, int m, int d);

/// Exact integer coefficients c(x, a), input-major like Behavior.
struct LinearFunctional {
  int m = 0;
  int d = 0;
  std::size_t outcome_count = 0;
  std::vector<std::int64_t> coeffs;

  static LinearFunctional from(const BellExpression &e);

  std::int64_t value(const DeterministicPoint &point) const;
};

// ---------------------------------------------------------------------------
// Local model

/// outputs[j] = {a_j for X_j, a_j for X'_j}.
struct LocalStrategy {
  int m = 0;
  int d = 0;
  std::vector<std::array<int, 2>> outputs;

  DeterministicPoint point() const;

  friend bool operator==(const LocalStrategy &, const LocalStrategy &) = default;
};

Behavior behavior_from_local(const LocalStrategy &s);

/// Streams the d^(2m) local deterministic strategies in lexicographic order.
class LocalVertexStream {
 public:
  LocalVertexStream(int m, int d, std::uint64_t cap = kDefaultEnumerationCap);

  std::uint64_t size() const { return size_; }
  std::optional<LocalStrategy> next_strategy();
  std::optional<Behavior> next();

  static LocalStrategy strategy_at(int m, int d, std::uint64_t index);

 private:
  int m_;
  int d_;
  std::uint64_t size_;
  std::uint64_t cursor_ = 0;
};

// ---------------------------------------------------------------------------
// Bipartition model

/// Two complementary nonempty groups of 0-based parties, each sorted; `first`
/// always contains party 0.
struct Bipartition {
  std::vector<int> first;
  std::vector<int> second;

  /// 1-based, e.g. "1,2|3".
  std::string label() const;

  friend bool operator==(const Bipartition &, const Bipartition &) = default;
};

/// All 2^(m-1) - 1 proper bipartitions in a fixed order.
std::vector<Bipartition> all_bipartitions(int m);

/// Parses "1,2|3" (1-based) into a normalized bipartition of m parties.
Bipartition parse_bipartition(std::string_view text, int m);

/// Deterministic joint strategy of a group; map[y] is the group's joint outcome for
/// its joint input y (first group member most significant in both). Signaling
/// within the group is allowed.
struct GroupStrategy {
  std::vector<int> group;
  std::vector<OutcomeIndex> map;

  friend bool operator==(const GroupStrategy &, const GroupStrategy &) = default;
};

/// (d^k)^(2^k), saturating at UINT64_MAX.
std::uint64_t group_strategy_count(int group_size, int d);

/// Strategy number `index` in lexicographic order of the map.
GroupStrategy group_strategy_at(std::vector<int> group, int d, std::uint64_t index);

struct BipartitionVertex {
  Bipartition partition;
  GroupStrategy first;
  GroupStrategy second;

  friend bool operator==(const BipartitionVertex &, const BipartitionVertex &) = default;
};

DeterministicPoint vertex_point(const BipartitionVertex &v, int m, int d);
Behavior behavior_from_vertex(const BipartitionVertex &v, int m, int d);

/// Streams every pair of group strategies of one bipartition, `first` side major.
class BipartitionVertexStream {
 public:
  BipartitionVertexStream(int m, int d, Bipartition partition, std::uint64_t cap = kDefaultEnumerationCap);

  std::uint64_t size() const { return first_count_ * second_count_; }
  std::optional<BipartitionVertex> next();

 private:
  int m_;
  int d_;
  Bipartition partition_;
  std::uint64_t first_count_;
  std::uint64_t second_count_;
  std::uint64_t cursor_ = 0;
};

/// Number of vertices of the union over all bipartitions.
std::uint64_t bipartition_vertex_count(int m, int d);

// ---------------------------------------------------------------------------
// Bounds

struct PartitionBound {
  Bipartition partition;
  std::int64_t bound = 0;
  BipartitionVertex argopt;
};

struct BoundReport {
  std::int64_t bound = 0;
  BoundModel model = BoundModel::local;
  std::vector<PartitionBound> per_partition;
  std::optional<BipartitionVertex> argopt_vertex;
  std::optional<LocalStrategy> argopt_local;
  std::uint64_t evaluated = 0;
};

/// Exact optimum over all local deterministic strategies.
BoundReport local_bound(const BellExpression &e, const EnumerationOptions &options = {});

/// Exact optimum over bipartition vertices using the best-response decomposition:
/// the side with fewer strategies is enumerated, the other responds optimally.
/// An empty `partitions` means all bipartitions.
BoundReport bipartition_bound(const BellExpression &e, const EnumerationOptions &options = {},
                              std::span<const Bipartition> partitions = {});

/// Same optimum by brute force over every vertex pair.
BoundReport bipartition_bound_exhaustive(const BellExpression &e, const EnumerationOptions &options = {},
                                         std::span<const Bipartition> partitions = {});

struct BestResponse {
  GroupStrategy strategy;
  std::int64_t value = 0;
};

/// Optimal deterministic response of `responding_group` to `fixed`, chosen per joint
/// input. Ties go to the smallest joint outcome.
BestResponse best_response(const BellExpression &e, const GroupStrategy &fixed,
                           std::span<const int> responding_group);

/// Lower-level variant on an arbitrary functional. With `tie_breaker` set, ties are
/// broken uniformly at random instead.
BestResponse best_response(const LinearFunctional &f, const GroupStrategy &fixed,
                           std::span<const int> responding_group, bool maximize,
                           std::mt19937_64 *tie_breaker = nullptr);

/// Exact max (or min) of `f` over the vertices of one bipartition.
PartitionBound optimize_over_partition(const LinearFunctional &f, const Bipartition &partition, bool maximize,
                                       const EnumerationOptions &options = {});

/// Signed margin beyond the bound; positive means violation.
double violation(const BellExpression &e, const Behavior &b);

/// Behavior of the other parties given that `party` used `input` and saw `outcome`.
Behavior conditional_behavior(const Behavior &b, int party, int input, int outcome);

/// Largest change of any (m-1)-party marginal under a change of the remaining
/// party's input. Zero for no-signaling behaviors.
double signaling_deviation(const Behavior &b);

}  // namespace svetlichny
