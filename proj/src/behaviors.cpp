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

#include "svetlichny/behaviors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "svetlichny/errors.hpp"
#include "svetlichny/parallel.hpp"

namespace svetlichny {

namespace {

std::size_t outcome_count_of(int m, int d) {
  return static_cast<std::size_t>(checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(m)));
}

void check_sizes(int m, int d, const char *who) {
  if (m < 1 || m > kMaxParties) {
    throw InvalidArgument(std::string(who) + ": party count must be in [1, " + std::to_string(kMaxParties) + "]");
  }
  if (d < 2) {
    throw InvalidArgument(std::string(who) + ": outcome count must be at least 2");
  }
}

// Where a group's local inputs and outcomes sit inside the global indices.
struct GroupLayout {
  std::vector<int> parties;
  std::size_t input_count = 0;
  std::size_t outcome_count = 0;
  std::vector<std::uint32_t> local_input;     // per global input x
  std::vector<std::size_t> outcome_offset;    // per local joint outcome
  std::vector<std::vector<InputIndex>> inputs_of;  // global inputs per local input

  GroupLayout(std::vector<int> group, int m, int d) : parties(std::move(group)) {
    const int k = static_cast<int>(parties.size());
    input_count = std::size_t{1} << k;
    outcome_count = outcome_count_of(k, d);
    local_input.resize(std::size_t{1} << m);
    inputs_of.resize(input_count);
    for (InputIndex x = 0; x < (InputIndex{1} << m); ++x) {
      std::uint32_t y = 0;
      for (int i = 0; i < k; ++i) {
        y |= static_cast<std::uint32_t>(input_bit(x, parties[static_cast<std::size_t>(i)], m)) << (k - 1 - i);
      }
      local_input[x] = y;
      inputs_of[y].push_back(x);
    }
    outcome_offset.resize(outcome_count);
    for (std::size_t o = 0; o < outcome_count; ++o) {
      std::size_t offset = 0;
      for (int i = 0; i < k; ++i) {
        auto digit = static_cast<std::size_t>(outcome_digit(static_cast<OutcomeIndex>(o), i, k, d));
        offset += digit * outcome_count_of(m - 1 - parties[static_cast<std::size_t>(i)], d);
      }
      outcome_offset[o] = offset;
    }
  }
};

void check_group_cover(std::span<const int> a, std::span<const int> b, int m, const char *who) {
  std::vector<int> seen(static_cast<std::size_t>(m), 0);
  for (int p : a) {
    if (p < 0 || p >= m) throw InvalidArgument(std::string(who) + ": party out of range");
    ++seen[static_cast<std::size_t>(p)];
  }
  for (int p : b) {
    if (p < 0 || p >= m) throw InvalidArgument(std::string(who) + ": party out of range");
    ++seen[static_cast<std::size_t>(p)];
  }
  if (a.empty() || b.empty() || std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
    throw InvalidArgument(std::string(who) + ": groups must be nonempty and partition the parties");
  }
}

void check_strategy(const GroupStrategy &s, int d, const char *who) {
  const std::size_t k = s.group.size();
  if (s.map.size() != (std::size_t{1} << k)) {
    throw InvalidArgument(std::string(who) + ": strategy map must have 2^|group| entries");
  }
  const std::size_t limit = outcome_count_of(static_cast<int>(k), d);
  for (OutcomeIndex o : s.map) {
    if (o >= limit) throw InvalidArgument(std::string(who) + ": strategy output out of range");
  }
}

// Lexicographic counter over group strategy maps; entry 0 is most significant.
class StrategyCounter {
 public:
  StrategyCounter(std::size_t entries, OutcomeIndex base) : map_(entries, 0), base_(base) {}

  void set(std::uint64_t index) {
    for (std::size_t i = map_.size(); i-- > 0;) {
      map_[i] = static_cast<OutcomeIndex>(index % base_);
      index /= base_;
    }
  }

  void increment() {
    for (std::size_t i = map_.size(); i-- > 0;) {
      if (++map_[i] < base_) return;
      map_[i] = 0;
    }
  }

  const std::vector<OutcomeIndex> &map() const { return map_; }

 private:
  std::vector<OutcomeIndex> map_;
  OutcomeIndex base_;
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

// Best response of `responder` to a fixed map of `fixed`.
std::int64_t respond(const LinearFunctional &f, const GroupLayout &fixed, const std::vector<OutcomeIndex> &fixed_map,
                     const GroupLayout &responder, bool maximize, std::vector<OutcomeIndex> &out,
                     std::mt19937_64 *tie_breaker) {
  out.resize(responder.input_count);
  std::int64_t total = 0;
  std::vector<std::size_t> base;
  std::vector<OutcomeIndex> ties;
  for (std::size_t y = 0; y < responder.input_count; ++y) {
    const auto &xs = responder.inputs_of[y];
    base.clear();
    for (InputIndex x : xs) {
      base.push_back(x * f.outcome_count + fixed.outcome_offset[fixed_map[fixed.local_input[x]]]);
    }
    std::int64_t best = 0;
    OutcomeIndex best_b = 0;
    ties.clear();
    for (std::size_t b = 0; b < responder.outcome_count; ++b) {
      std::int64_t score = 0;
      const std::size_t offset = responder.outcome_offset[b];
      for (std::size_t idx : base) score += f.coeffs[idx + offset];
      bool better = b == 0 || (maximize ? score > best : score < best);
      if (better) {
        best = score;
        best_b = static_cast<OutcomeIndex>(b);
        ties.assign(1, best_b);
      } else if (score == best) {
        ties.push_back(static_cast<OutcomeIndex>(b));
      }
    }
    if (tie_breaker != nullptr && ties.size() > 1) {
      std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
      best_b = ties[pick(*tie_breaker)];
    }
    out[y] = best_b;
    total += best;
  }
  return total;
}

std::vector<Bipartition> resolve_partitions(int m, std::span<const Bipartition> partitions) {
  if (partitions.empty()) return all_bipartitions(m);
  std::vector<Bipartition> out(partitions.begin(), partitions.end());
  for (const Bipartition &p : out) check_group_cover(p.first, p.second, m, "bipartition");
  return out;
}

BoundReport combine(const BellExpression &e, std::vector<PartitionBound> per_partition, std::uint64_t evaluated) {
  BoundReport report;
  report.model = BoundModel::bipartition;
  report.evaluated = evaluated;
  for (const PartitionBound &pb : per_partition) {
    if (!report.argopt_vertex || e.improves(pb.bound, report.bound)) {
      report.bound = pb.bound;
      report.argopt_vertex = pb.argopt;
    }
  }
  report.per_partition = std::move(per_partition);
  return report;
}

}  // namespace

Behavior uniform_behavior(int m, int d) {
  check_sizes(m, d, "uniform_behavior");
  const std::size_t outcomes = outcome_count_of(m, d);
  return Behavior(m, d, std::vector<double>((std::size_t{1} << m) * outcomes, 1.0 / static_cast<double>(outcomes)));
}

Behavior mix(double w, const Behavior &b1, const Behavior &b2) {
  if (!b1.same_shape(b2)) {
    throw InvalidArgument("mix: behaviors differ in shape");
  }
  if (!(w >= 0.0 && w <= 1.0)) {
    throw InvalidArgument("mix: weight must be in [0, 1]");
  }
  std::vector<double> probs(b1.probs().size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = w * b1.probs()[i] + (1.0 - w) * b2.probs()[i];
  }
  return Behavior(b1.parties(), b1.outcomes(), std::move(probs));
}

Behavior behavior_from_point(const DeterministicPoint &point, int m, int d) {
  check_sizes(m, d, "behavior_from_point");
  const std::size_t outcomes = outcome_count_of(m, d);
  if (point.size() != (std::size_t{1} << m)) {
    throw InvalidArgument("behavior_from_point: one outcome per input combination expected");
  }
  std::vector<double> probs(point.size() * outcomes, 0.0);
  for (std::size_t x = 0; x < point.size(); ++x) {
    if (point[x] >= outcomes) throw InvalidArgument("behavior_from_point: outcome out of range");
    probs[x * outcomes + point[x]] = 1.0;
  }
  return Behavior(m, d, std::move(probs));
}

LinearFunctional LinearFunctional::from(const BellExpression &e) {
  const int m = e.parties();
  const int d = e.outcomes();
  LinearFunctional f{m, d, outcome_count_of(m, d), {}};
  f.coeffs.assign((std::size_t{1} << m) * f.outcome_count, 0);
  std::vector<int> residue(f.outcome_count);
  for (std::size_t a = 0; a < f.outcome_count; ++a) residue[a] = digit_sum(static_cast<OutcomeIndex>(a), m, d) % d;
  for (const Term &t : e.terms()) {
    for (std::size_t a = 0; a < f.outcome_count; ++a) {
      f.coeffs[t.inputs * f.outcome_count + a] = e.term_value(t, residue[a]);
    }
  }
  return f;
}

std::int64_t LinearFunctional::value(const DeterministicPoint &point) const {
  std::int64_t total = 0;
  for (std::size_t x = 0; x < point.size(); ++x) total += coeffs[x * outcome_count + point[x]];
  return total;
}

DeterministicPoint LocalStrategy::point() const {
  DeterministicPoint p(std::size_t{1} << m);
  for (InputIndex x = 0; x < p.size(); ++x) {
    OutcomeIndex a = 0;
    for (int j = 0; j < m; ++j) {
      a = a * static_cast<OutcomeIndex>(d) + static_cast<OutcomeIndex>(outputs[static_cast<std::size_t>(j)][input_bit(x, j, m)]);
    }
    p[x] = a;
  }
  return p;
}

Behavior behavior_from_local(const LocalStrategy &s) { return behavior_from_point(s.point(), s.m, s.d); }

LocalVertexStream::LocalVertexStream(int m, int d, std::uint64_t cap) : m_(m), d_(d) {
  check_sizes(m, d, "enumerate_local_vertices");
  size_ = checked_pow(static_cast<std::uint64_t>(d), 2 * static_cast<std::uint64_t>(m));
  if (size_ > cap) {
    throw ResourceLimitError("local vertex enumeration", size_, cap);
  }
}

LocalStrategy LocalVertexStream::strategy_at(int m, int d, std::uint64_t index) {
  LocalStrategy s{m, d, std::vector<std::array<int, 2>>(static_cast<std::size_t>(m))};
  for (int j = m - 1; j >= 0; --j) {
    for (int x = 1; x >= 0; --x) {
      s.outputs[static_cast<std::size_t>(j)][static_cast<std::size_t>(x)] = static_cast<int>(index % static_cast<std::uint64_t>(d));
      index /= static_cast<std::uint64_t>(d);
    }
  }
  return s;
}

std::optional<LocalStrategy> LocalVertexStream::next_strategy() {
  if (cursor_ >= size_) return std::nullopt;
  return strategy_at(m_, d_, cursor_++);
}

std::optional<Behavior> LocalVertexStream::next() {
  auto s = next_strategy();
  if (!s) return std::nullopt;
  return behavior_from_local(*s);
}

std::string Bipartition::label() const {
  std::string out;
  auto append = [&out](const std::vector<int> &group) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(group[i] + 1);
    }
  };
  append(first);
  out += '|';
  append(second);
  return out;
}

std::vector<Bipartition> all_bipartitions(int m) {
  if (m < 2 || m > kMaxParties) {
    throw InvalidArgument("all_bipartitions: m must be in [2, " + std::to_string(kMaxParties) + "]");
  }
  std::vector<Bipartition> out;
  // Subsets of parties 1..m-1 joining party 0; the full set is excluded.
  const std::uint32_t limit = (1u << (m - 1)) - 1;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    Bipartition p;
    p.first.push_back(0);
    for (int j = 1; j < m; ++j) {
      ((mask >> (j - 1)) & 1u ? p.first : p.second).push_back(j);
    }
    out.push_back(std::move(p));
  }
  return out;
}

Bipartition parse_bipartition(std::string_view text, int m) {
  auto bar = text.find('|');
  if (bar == std::string_view::npos) {
    throw InvalidArgument("bipartition '" + std::string(text) + "': expected form like 1,2|3");
  }
  auto parse_side = [&](std::string_view side) {
    std::vector<int> group;
    while (!side.empty()) {
      auto comma = side.find(',');
      std::string_view tok = side.substr(0, comma);
      int value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw InvalidArgument("bipartition '" + std::string(text) + "': bad party '" + std::string(tok) + "'");
      }
      group.push_back(value - 1);
      if (comma == std::string_view::npos) break;
      side.remove_prefix(comma + 1);
    }
    std::sort(group.begin(), group.end());
    return group;
  };
  Bipartition p{parse_side(text.substr(0, bar)), parse_side(text.substr(bar + 1))};
  check_group_cover(p.first, p.second, m, "bipartition");
  if (p.first.front() != 0) std::swap(p.first, p.second);
  return p;
}

std::uint64_t group_strategy_count(int group_size, int d) {
  std::uint64_t outputs = checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(group_size));
  return checked_pow(outputs, std::uint64_t{1} << group_size);
}

GroupStrategy group_strategy_at(std::vector<int> group, int d, std::uint64_t index) {
  const int k = static_cast<int>(group.size());
  StrategyCounter counter(std::size_t{1} << k, static_cast<OutcomeIndex>(outcome_count_of(k, d)));
  counter.set(index);
  return GroupStrategy{std::move(group), counter.map()};
}

DeterministicPoint vertex_point(const BipartitionVertex &v, int m, int d) {
  check_group_cover(v.first.group, v.second.group, m, "vertex");
  check_strategy(v.first, d, "vertex");
  check_strategy(v.second, d, "vertex");
  GroupLayout a(v.first.group, m, d);
  GroupLayout b(v.second.group, m, d);
  DeterministicPoint p(std::size_t{1} << m);
  for (InputIndex x = 0; x < p.size(); ++x) {
    p[x] = static_cast<OutcomeIndex>(a.outcome_offset[v.first.map[a.local_input[x]]] +
                                     b.outcome_offset[v.second.map[b.local_input[x]]]);
  }
  return p;
}

Behavior behavior_from_vertex(const BipartitionVertex &v, int m, int d) {
  return behavior_from_point(vertex_point(v, m, d), m, d);
}

BipartitionVertexStream::BipartitionVertexStream(int m, int d, Bipartition partition, std::uint64_t cap)
    : m_(m), d_(d), partition_(std::move(partition)) {
  check_sizes(m, d, "enumerate_bipartition_vertices");
  check_group_cover(partition_.first, partition_.second, m, "enumerate_bipartition_vertices");
  first_count_ = group_strategy_count(static_cast<int>(partition_.first.size()), d);
  second_count_ = group_strategy_count(static_cast<int>(partition_.second.size()), d);
  std::uint64_t total = saturating_mul(first_count_, second_count_);
  if (total > cap) {
    throw ResourceLimitError("bipartition vertex enumeration " + partition_.label(), total, cap);
  }
}

std::optional<BipartitionVertex> BipartitionVertexStream::next() {
  if (cursor_ >= size()) return std::nullopt;
  std::uint64_t i = cursor_++;
  return BipartitionVertex{partition_, group_strategy_at(partition_.first, d_, i / second_count_),
                           group_strategy_at(partition_.second, d_, i % second_count_)};
}

std::uint64_t bipartition_vertex_count(int m, int d) {
  std::uint64_t total = 0;
  for (const Bipartition &p : all_bipartitions(m)) {
    std::uint64_t n = saturating_mul(group_strategy_count(static_cast<int>(p.first.size()), d),
                                     group_strategy_count(static_cast<int>(p.second.size()), d));
    total = (total > UINT64_MAX - n) ? UINT64_MAX : total + n;
  }
  return total;
}

BoundReport local_bound(const BellExpression &e, const EnumerationOptions &options) {
  const int m = e.parties();
  const int d = e.outcomes();
  LocalVertexStream stream(m, d, options.cap);
  const LinearFunctional f = LinearFunctional::from(e);

  struct Best {
    bool found = false;
    std::int64_t value = 0;
    std::uint64_t index = 0;
  };
  auto partials = parallel_chunks(stream.size(), options.threads, [&](std::uint64_t begin, std::uint64_t end) {
    Best best;
    for (std::uint64_t i = begin; i < end; ++i) {
      std::int64_t v = f.value(LocalVertexStream::strategy_at(m, d, i).point());
      if (!best.found || e.improves(v, best.value)) best = {true, v, i};
    }
    return best;
  });
  Best best;
  for (const Best &p : partials) {
    if (p.found && (!best.found || e.improves(p.value, best.value))) best = p;
  }
  BoundReport report;
  report.model = BoundModel::local;
  report.bound = best.value;
  report.argopt_local = LocalVertexStream::strategy_at(m, d, best.index);
  report.evaluated = stream.size();
  return report;
}

PartitionBound optimize_over_partition(const LinearFunctional &f, const Bipartition &partition, bool maximize,
                                       const EnumerationOptions &options) {
  const int m = f.m;
  const int d = f.d;
  check_group_cover(partition.first, partition.second, m, "optimize_over_partition");
  const std::uint64_t first_count = group_strategy_count(static_cast<int>(partition.first.size()), d);
  const std::uint64_t second_count = group_strategy_count(static_cast<int>(partition.second.size()), d);
  const bool enumerate_first = first_count <= second_count;
  const std::uint64_t count = enumerate_first ? first_count : second_count;
  if (count > options.cap) {
    throw ResourceLimitError("best-response enumeration " + partition.label(), count, options.cap);
  }
  const GroupLayout fixed(enumerate_first ? partition.first : partition.second, m, d);
  const GroupLayout responder(enumerate_first ? partition.second : partition.first, m, d);

  struct Best {
    bool found = false;
    std::int64_t value = 0;
    std::vector<OutcomeIndex> fixed_map;
    std::vector<OutcomeIndex> response;
  };
  auto partials = parallel_chunks(count, options.threads, [&](std::uint64_t begin, std::uint64_t end) {
    Best best;
    StrategyCounter counter(fixed.input_count, static_cast<OutcomeIndex>(fixed.outcome_count));
    counter.set(begin);
    std::vector<OutcomeIndex> response;
    for (std::uint64_t i = begin; i < end; ++i, counter.increment()) {
      std::int64_t v = respond(f, fixed, counter.map(), responder, maximize, response, nullptr);
      if (!best.found || (maximize ? v > best.value : v < best.value)) {
        best = {true, v, counter.map(), response};
      }
    }
    return best;
  });
  Best best;
  for (Best &p : partials) {
    if (p.found && (!best.found || (maximize ? p.value > best.value : p.value < best.value))) best = std::move(p);
  }
  GroupStrategy fixed_strategy{fixed.parties, best.fixed_map};
  GroupStrategy response{responder.parties, best.response};
  PartitionBound out;
  out.partition = partition;
  out.bound = best.value;
  out.argopt = enumerate_first ? BipartitionVertex{partition, fixed_strategy, response}
                               : BipartitionVertex{partition, response, fixed_strategy};
  return out;
}

BoundReport bipartition_bound(const BellExpression &e, const EnumerationOptions &options,
                              std::span<const Bipartition> partitions) {
  const LinearFunctional f = LinearFunctional::from(e);
  const bool maximize = e.direction() == Direction::upper;
  std::vector<PartitionBound> per_partition;
  std::uint64_t evaluated = 0;
  for (const Bipartition &p : resolve_partitions(e.parties(), partitions)) {
    per_partition.push_back(optimize_over_partition(f, p, maximize, options));
    evaluated += std::min(group_strategy_count(static_cast<int>(p.first.size()), e.outcomes()),
                          group_strategy_count(static_cast<int>(p.second.size()), e.outcomes()));
  }
  return combine(e, std::move(per_partition), evaluated);
}

BoundReport bipartition_bound_exhaustive(const BellExpression &e, const EnumerationOptions &options,
                                         std::span<const Bipartition> partitions) {
  const int m = e.parties();
  const int d = e.outcomes();
  const LinearFunctional f = LinearFunctional::from(e);
  std::vector<PartitionBound> per_partition;
  std::uint64_t evaluated = 0;
  for (const Bipartition &p : resolve_partitions(m, partitions)) {
    BipartitionVertexStream stream(m, d, p, options.cap);
    const GroupLayout a(p.first, m, d);
    const GroupLayout b(p.second, m, d);
    const std::uint64_t second_count = group_strategy_count(static_cast<int>(p.second.size()), d);

    struct Best {
      bool found = false;
      std::int64_t value = 0;
      std::uint64_t index = 0;
    };
    auto partials = parallel_chunks(stream.size(), options.threads, [&](std::uint64_t begin, std::uint64_t end) {
      Best best;
      StrategyCounter first(a.input_count, static_cast<OutcomeIndex>(a.outcome_count));
      StrategyCounter second(b.input_count, static_cast<OutcomeIndex>(b.outcome_count));
      first.set(begin / second_count);
      second.set(begin % second_count);
      for (std::uint64_t i = begin; i < end; ++i) {
        std::int64_t v = 0;
        for (InputIndex x = 0; x < (InputIndex{1} << m); ++x) {
          v += f.coeffs[x * f.outcome_count + a.outcome_offset[first.map()[a.local_input[x]]] +
                        b.outcome_offset[second.map()[b.local_input[x]]]];
        }
        if (!best.found || e.improves(v, best.value)) best = {true, v, i};
        second.increment();
        if ((i + 1) % second_count == 0) first.increment();
      }
      return best;
    });
    Best best;
    for (const Best &q : partials) {
      if (q.found && (!best.found || e.improves(q.value, best.value))) best = q;
    }
    PartitionBound pb;
    pb.partition = p;
    pb.bound = best.value;
    pb.argopt = BipartitionVertex{p, group_strategy_at(p.first, d, best.index / second_count),
                                  group_strategy_at(p.second, d, best.index % second_count)};
    per_partition.push_back(std::move(pb));
    evaluated += stream.size();
  }
  return combine(e, std::move(per_partition), evaluated);
}

BestResponse best_response(const LinearFunctional &f, const GroupStrategy &fixed,
                           std::span<const int> responding_group, bool maximize, std::mt19937_64 *tie_breaker) {
  check_group_cover(fixed.group, responding_group, f.m, "best_response");
  check_strategy(fixed, f.d, "best_response");
  const GroupLayout fixed_layout(fixed.group, f.m, f.d);
  const GroupLayout responder(std::vector<int>(responding_group.begin(), responding_group.end()), f.m, f.d);
  BestResponse out;
  out.strategy.group = responder.parties;
  out.value = respond(f, fixed_layout, fixed.map, responder, maximize, out.strategy.map, tie_breaker);
  return out;
}

BestResponse best_response(const BellExpression &e, const GroupStrategy &fixed,
                           std::span<const int> responding_group) {
  return best_response(LinearFunctional::from(e), fixed, responding_group, e.direction() == Direction::upper);
}

double violation(const BellExpression &e, const Behavior &b) {
  double value = evaluate(e, b);
  double bound = static_cast<double>(e.bound());
  return e.direction() == Direction::upper ? value - bound : bound - value;
}

Behavior conditional_behavior(const Behavior &b, int party, int input, int outcome) {
  const int m = b.parties();
  const int d = b.outcomes();
  if (m < 2) throw InvalidArgument("conditional_behavior: need at least two parties");
  if (party < 0 || party >= m || (input != 0 && input != 1) || outcome < 0 || outcome >= d) {
    throw InvalidArgument("conditional_behavior: party, input or outcome out of range");
  }
  const std::size_t rest_outcomes = outcome_count_of(m - 1, d);
  std::vector<double> probs((std::size_t{1} << (m - 1)) * rest_outcomes, 0.0);
  for (InputIndex xr = 0; xr < (InputIndex{1} << (m - 1)); ++xr) {
    // Re-insert the conditioning party's input bit at its position.
    const int shift = m - 1 - party;
    const InputIndex high = (xr >> shift) << (shift + 1);
    const InputIndex low = xr & ((InputIndex{1} << shift) - 1);
    const InputIndex x = high | (static_cast<InputIndex>(input) << shift) | low;
    double marginal = 0.0;
    for (OutcomeIndex a = 0; a < b.outcome_count(); ++a) {
      if (outcome_digit(a, party, m, d) == outcome) marginal += b(x, a);
    }
    if (marginal <= 0.0) {
      throw InvalidArgument("conditional_behavior: conditioning event has probability zero");
    }
    for (OutcomeIndex a = 0; a < b.outcome_count(); ++a) {
      if (outcome_digit(a, party, m, d) != outcome) continue;
      OutcomeIndex rest = 0;
      for (int j = 0; j < m; ++j) {
        if (j == party) continue;
        rest = rest * static_cast<OutcomeIndex>(d) + static_cast<OutcomeIndex>(outcome_digit(a, j, m, d));
      }
      probs[xr * rest_outcomes + rest] = b(x, a) / marginal;
    }
  }
  return Behavior(m - 1, d, std::move(probs));
}

double signaling_deviation(const Behavior &b) {
  const int m = b.parties();
  const int d = b.outcomes();
  double worst = 0.0;
  for (int party = 0; party < m; ++party) {
    const InputIndex bit = InputIndex{1} << (m - 1 - party);
    const std::size_t stride = outcome_count_of(m - 1 - party, d);
    for (InputIndex x = 0; x < (InputIndex{1} << m); ++x) {
      if (x & bit) continue;
      // Marginalize party's outcome digit for inputs x and x|bit and compare.
      for (OutcomeIndex a = 0; a < b.outcome_count(); ++a) {
        if (outcome_digit(a, party, m, d) != 0) continue;
        double p0 = 0.0;
        double p1 = 0.0;
        for (int v = 0; v < d; ++v) {
          p0 += b(x, a + static_cast<OutcomeIndex>(v * stride));
          p1 += b(x | bit, a + static_cast<OutcomeIndex>(v * stride));
        }
        worst = std::max(worst, std::abs(p0 - p1));
      }
    }
  }
  return worst;
}

}  // namespace svetlichny
