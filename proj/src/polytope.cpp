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

#include "svetlichny/polytope.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <utility>

#include "svetlichny/errors.hpp"

namespace svetlichny {

namespace {

struct Overflow {};

struct CheckedOps {
  using Int = std::int64_t;

  static Int mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r) || r == INT64_MIN) throw Overflow{};
    return r;
  }
  static Int sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r) || r == INT64_MIN) throw Overflow{};
    return r;
  }
  static Int gcd(Int a, Int b) { return std::gcd(a, b); }
};

struct BigOps {
  using Int = BigInt;

  static Int mul(const Int &a, const Int &b) { return a * b; }
  static Int sub(const Int &a, const Int &b) { return a - b; }
  static Int gcd(const Int &a, const Int &b) { return boost::multiprecision::gcd(a, b); }
};

// Reduced row echelon basis kept fraction-free: every row is a primitive integer
// vector whose pivot is positive and whose other pivot columns are zero.
template <typename Ops>
struct Echelon {
  using Int = typename Ops::Int;

  std::size_t length = 0;
  std::vector<std::vector<Int>> rows;
  std::vector<std::size_t> pivots;
  std::vector<int> row_of_col;

  explicit Echelon(std::size_t n) : length(n), row_of_col(n, -1) {}

  static void make_primitive(std::vector<Int> &v) {
    Int g = 0;
    for (const Int &x : v) {
      if (x != 0) g = Ops::gcd(g, x);
    }
    if (g > 1) {
      for (Int &x : v) x /= g;
    }
  }

  // v <- row[c] * v - v[c] * row, which clears column c.
  static void eliminate(std::vector<Int> &v, const std::vector<Int> &row, std::size_t c) {
    Int a = row[c];
    Int b = v[c];
    Int g = Ops::gcd(a, b);
    a /= g;
    b /= g;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (row[k] == 0) {
        if (v[k] != 0) v[k] = Ops::mul(a, v[k]);
      } else {
        v[k] = Ops::sub(Ops::mul(a, v[k]), Ops::mul(b, row[k]));
      }
    }
    make_primitive(v);
  }

  void reduce(std::vector<Int> &v) const {
    for (std::size_t c = 0; c < length; ++c) {
      if (v[c] != 0 && row_of_col[c] >= 0) {
        eliminate(v, rows[static_cast<std::size_t>(row_of_col[c])], c);
      }
    }
  }

  // Leaves the basis untouched if an Overflow escapes.
  bool add(std::vector<Int> v) {
    reduce(v);
    std::size_t p = 0;
    while (p < length && v[p] == 0) ++p;
    if (p == length) return false;
    if (v[p] < 0) {
      for (Int &x : v) x = -x;
    }
    std::vector<std::pair<std::size_t, std::vector<Int>>> updated;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[j][p] != 0) {
        std::vector<Int> r = rows[j];
        eliminate(r, v, p);
        updated.emplace_back(j, std::move(r));
      }
    }
    for (auto &[j, r] : updated) rows[j] = std::move(r);
    rows.push_back(std::move(v));
    pivots.push_back(p);
    row_of_col[p] = static_cast<int>(rows.size() - 1);
    return true;
  }
};

Echelon<BigOps> promote(const Echelon<CheckedOps> &small) {
  Echelon<BigOps> big(small.length);
  big.pivots = small.pivots;
  big.row_of_col = small.row_of_col;
  for (const auto &row : small.rows) {
    big.rows.emplace_back(row.begin(), row.end());
  }
  return big;
}

std::int64_t to_int64(const BigInt &v) {
  static const BigInt limit = BigInt(1) << 40;
  if (boost::multiprecision::abs(v) >= limit) {
    throw InconsistencyError("null-space functional has coefficients too large to verify exactly");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

struct AffineRankAccumulator::Impl {
  std::optional<Echelon<CheckedOps>> small;
  std::optional<Echelon<BigOps>> big;

  explicit Impl(std::size_t n) : small(std::in_place, n) {}

  int rank() const { return static_cast<int>(small ? small->rows.size() : big->rows.size()); }

  std::vector<std::vector<BigInt>> rows() const {
    if (big) return big->rows;
    std::vector<std::vector<BigInt>> out;
    for (const auto &row : small->rows) out.emplace_back(row.begin(), row.end());
    return out;
  }

  std::vector<std::size_t> pivots() const { return small ? small->pivots : big->pivots; }
};

AffineRankAccumulator::AffineRankAccumulator(std::size_t length, int cap)
    : length_(length), cap_(cap), impl_(std::make_unique<Impl>(length)) {}

AffineRankAccumulator::~AffineRankAccumulator() = default;
AffineRankAccumulator::AffineRankAccumulator(AffineRankAccumulator &&) noexcept = default;
AffineRankAccumulator &AffineRankAccumulator::operator=(AffineRankAccumulator &&) noexcept = default;

int AffineRankAccumulator::rank() const { return impl_->rank(); }

bool AffineRankAccumulator::uses_big_integers() const { return impl_->big.has_value(); }

bool AffineRankAccumulator::add(std::span<const std::int64_t> v) {
  if (v.size() != length_) {
    throw InvalidArgument("affine_rank: vector of length " + std::to_string(v.size()) + ", expected " +
                          std::to_string(length_));
  }
  if (anchor_.empty()) {
    anchor_.assign(v.begin(), v.end());
    return false;
  }
  if (saturated()) return false;
  if (impl_->small) {
    try {
      std::vector<std::int64_t> diff(length_);
      for (std::size_t i = 0; i < length_; ++i) diff[i] = CheckedOps::sub(v[i], anchor_[i]);
      return impl_->small->add(std::move(diff));
    } catch (const Overflow &) {
      impl_->big.emplace(promote(*impl_->small));
      impl_->small.reset();
    }
  }
  std::vector<BigInt> diff(length_);
  for (std::size_t i = 0; i < length_; ++i) diff[i] = BigInt(v[i]) - anchor_[i];
  return impl_->big->add(std::move(diff));
}

AffineBasis AffineRankAccumulator::basis() const {
  AffineBasis out;
  out.anchor = anchor_;
  out.rows = impl_->rows();
  out.rank = rank();
  return out;
}

std::vector<std::vector<BigInt>> AffineRankAccumulator::null_space() const {
  const auto rows = impl_->rows();
  const auto pivots = impl_->pivots();
  std::vector<bool> is_pivot(length_, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<BigInt>> out;
  for (std::size_t f = 0; f < length_; ++f) {
    if (is_pivot[f]) continue;
    BigInt scale = 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][f] != 0) scale = boost::multiprecision::lcm(scale, rows[i][pivots[i]]);
    }
    std::vector<BigInt> n(length_, 0);
    n[f] = scale;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][f] != 0) n[pivots[i]] = -rows[i][f] * (scale / rows[i][pivots[i]]);
    }
    Echelon<BigOps>::make_primitive(n);
    out.push_back(std::move(n));
  }
  return out;
}

AffineBasis affine_rank(std::span<const std::vector<std::int64_t>> vectors, int cap) {
  if (vectors.empty()) {
    throw InvalidArgument("affine_rank: empty vector set");
  }
  AffineRankAccumulator acc(vectors.front().size(), cap);
  for (const auto &v : vectors) {
    if (acc.saturated()) break;
    acc.add(v);
  }
  return acc.basis();
}

std::vector<std::int64_t> point_vector(const DeterministicPoint &point, std::size_t outcome_count) {
  std::vector<std::int64_t> v(point.size() * outcome_count, 0);
  for (std::size_t x = 0; x < point.size(); ++x) v[x * outcome_count + point[x]] = 1;
  return v;
}

int ambient_dimension(int m, int d) {
  const std::uint64_t outcomes = checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(m));
  return static_cast<int>((std::uint64_t{1} << m) * (outcomes - 1));
}

namespace {

std::size_t outcome_count_of(int m, int d) {
  return static_cast<std::size_t>(checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(m)));
}

// Calls `visit(point)` for every vertex of every bipartition until it returns false.
template <typename Visit>
std::uint64_t for_each_bipartition_vertex(int m, int d, std::uint64_t cap, Visit visit) {
  const std::uint64_t total = bipartition_vertex_count(m, d);
  if (total > cap) {
    throw ResourceLimitError("bipartition polytope enumeration", total, cap);
  }
  std::uint64_t scanned = 0;
  for (const Bipartition &p : all_bipartitions(m)) {
    BipartitionVertexStream stream(m, d, p, cap);
    while (auto v = stream.next()) {
      ++scanned;
      if (!visit(vertex_point(*v, m, d))) return scanned;
    }
  }
  return scanned;
}

std::mutex cache_mutex;
std::map<std::pair<int, int>, int> memory_cache;

std::filesystem::path cache_file(const std::string &dir, int m, int d) {
  return std::filesystem::path(dir) / ("bipartition_dim_m" + std::to_string(m) + "_d" + std::to_string(d) + ".txt");
}

std::optional<int> cached_dimension(int m, int d) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  if (auto it = memory_cache.find({m, d}); it != memory_cache.end()) return it->second;
  const std::string dir = polytope_cache_directory();
  if (dir.empty()) return std::nullopt;
  std::ifstream in(cache_file(dir, m, d));
  int value = -1;
  if (in >> value && value >= 0 && value <= ambient_dimension(m, d)) {
    memory_cache[{m, d}] = value;
    return value;
  }
  return std::nullopt;
}

void store_dimension(int m, int d, int value) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  memory_cache[{m, d}] = value;
  const std::string dir = polytope_cache_directory();
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream out(cache_file(dir, m, d));
  out << value << '\n';
}

// Uniformly random vertex of a uniformly random bipartition.
BipartitionVertex random_vertex(const std::vector<Bipartition> &partitions, int d, std::mt19937_64 &rng) {
  const Bipartition &p = partitions[std::uniform_int_distribution<std::size_t>(0, partitions.size() - 1)(rng)];
  auto random_strategy = [&](const std::vector<int> &group) {
    const auto outputs = static_cast<OutcomeIndex>(outcome_count_of(static_cast<int>(group.size()), d));
    GroupStrategy s{group, std::vector<OutcomeIndex>(std::size_t{1} << group.size())};
    std::uniform_int_distribution<OutcomeIndex> pick(0, outputs - 1);
    for (auto &o : s.map) o = pick(rng);
    return s;
  };
  return BipartitionVertex{p, random_strategy(p.first), random_strategy(p.second)};
}

}  // namespace

std::string polytope_cache_directory() {
  if (const char *dir = std::getenv("SVETLICHNY_CACHE_DIR"); dir != nullptr && *dir != '\0') return dir;
  if (const char *xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
    return (std::filesystem::path(xdg) / "svetlichny").string();
  }
  if (const char *home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return (std::filesystem::path(home) / ".cache" / "svetlichny").string();
  }
  return {};
}

int compute_polytope_dimension(int m, int d, const EnumerationOptions &options) {
  const std::size_t outcomes = outcome_count_of(m, d);
  AffineRankAccumulator acc((std::size_t{1} << m) * outcomes, ambient_dimension(m, d));
  for_each_bipartition_vertex(m, d, options.cap, [&](const DeterministicPoint &point) {
    acc.add(point_vector(point, outcomes));
    return !acc.saturated();
  });
  return acc.rank();
}

int polytope_dimension(int m, int d, const EnumerationOptions &options) {
  if (auto cached = cached_dimension(m, d)) return *cached;
  int value = compute_polytope_dimension(m, d, options);
  store_dimension(m, d, value);
  return value;
}

FacetReport facet_check(const BellExpression &e, const EnumerationOptions &options) {
  const int m = e.parties();
  const int d = e.outcomes();
  if (m < 2) throw InvalidArgument("facet_check: need at least two parties");
  FacetReport report;
  report.mode = "exhaustive";
  report.polytope_dim = polytope_dimension(m, d, options);
  const LinearFunctional f = LinearFunctional::from(e);
  AffineRankAccumulator acc((std::size_t{1} << m) * f.outcome_count, report.polytope_dim - 1);
  std::uint64_t strict = 0;
  report.vertices_scanned = for_each_bipartition_vertex(m, d, options.cap, [&](const DeterministicPoint &point) {
    const std::int64_t value = f.value(point);
    if (e.improves(value, e.bound())) {
      throw InconsistencyError("facet_check: a bipartition vertex reaches " + std::to_string(value) +
                               ", beyond the declared bound " + std::to_string(e.bound()));
    }
    if (value == e.bound()) {
      ++report.saturating_count;
      if (!acc.saturated()) acc.add(point_vector(point, f.outcome_count));
    } else {
      ++strict;
    }
    return true;
  });
  // With no strict vertex the hyperplane contains the polytope.
  report.saturating_rank = strict == 0 && report.saturating_count > 0 ? report.polytope_dim : acc.rank();
  report.is_facet = report.saturating_rank == report.polytope_dim - 1;
  return report;
}

int certified_polytope_dimension(int m, int d, const SamplingOptions &sampling, const EnumerationOptions &options) {
  const std::size_t outcomes = outcome_count_of(m, d);
  const auto partitions = all_bipartitions(m);
  std::mt19937_64 rng(sampling.seed);
  AffineRankAccumulator acc((std::size_t{1} << m) * outcomes, ambient_dimension(m, d));

  constexpr std::uint64_t kStall = 500;
  std::uint64_t stall = 0;
  for (std::uint64_t i = 0; i < sampling.samples && stall < kStall && !acc.saturated(); ++i) {
    const BipartitionVertex v = random_vertex(partitions, d, rng);
    stall = acc.add(point_vector(vertex_point(v, m, d), outcomes)) ? 0 : stall + 1;
  }

  // Every functional vanishing on the sampled hull must be constant on all vertices;
  // an optimizer that says otherwise hands back a vertex outside the hull.
  bool grew = true;
  while (grew && !acc.saturated()) {
    grew = false;
    for (const auto &normal : acc.null_space()) {
      LinearFunctional f{m, d, outcomes, std::vector<std::int64_t>(normal.size())};
      for (std::size_t k = 0; k < normal.size(); ++k) f.coeffs[k] = to_int64(normal[k]);
      std::int64_t level = 0;
      for (std::size_t k = 0; k < normal.size(); ++k) level += f.coeffs[k] * acc.anchor()[k];
      for (const Bipartition &p : partitions) {
        for (bool maximize : {true, false}) {
          PartitionBound extreme = optimize_over_partition(f, p, maximize, options);
          if (extreme.bound != level) {
            grew = acc.add(point_vector(vertex_point(extreme.argopt, m, d), outcomes)) || grew;
          }
        }
      }
    }
  }
  return acc.rank();
}

FacetReport facet_check_sampled(const BellExpression &e, const SamplingOptions &sampling,
                                const EnumerationOptions &options) {
  const int m = e.parties();
  const int d = e.outcomes();
  if (m < 2) throw InvalidArgument("facet_check: need at least two parties");
  FacetReport report;
  report.mode = "sampled";
  if (auto cached = cached_dimension(m, d)) {
    report.polytope_dim = *cached;
  } else {
    report.polytope_dim = certified_polytope_dimension(m, d, sampling, options);
    store_dimension(m, d, report.polytope_dim);
  }

  const LinearFunctional f = LinearFunctional::from(e);
  const bool maximize = e.direction() == Direction::upper;
  const auto partitions = all_bipartitions(m);
  std::mt19937_64 rng(sampling.seed ^ 0x9e3779b97f4a7c15ULL);
  AffineRankAccumulator acc((std::size_t{1} << m) * f.outcome_count, report.polytope_dim - 1);
  std::uint64_t strict = 0;
  for (std::uint64_t i = 0; i < sampling.samples && !(acc.saturated() && strict > 0); ++i) {
    BipartitionVertex v = random_vertex(partitions, d, rng);
    // Odd draws replace one side by a randomized best response to the other.
    if (i % 2 == 1) {
      const bool fix_first = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
      const GroupStrategy &fixed = fix_first ? v.first : v.second;
      GroupStrategy &other = fix_first ? v.second : v.first;
      other = best_response(f, fixed, other.group, maximize, &rng).strategy;
    }
    const DeterministicPoint point = vertex_point(v, m, d);
    const std::int64_t value = f.value(point);
    ++report.vertices_scanned;
    if (e.improves(value, e.bound())) {
      throw InconsistencyError("facet_check: a bipartition vertex reaches " + std::to_string(value) +
                               ", beyond the declared bound " + std::to_string(e.bound()));
    }
    if (value == e.bound()) {
      ++report.saturating_count;
      if (!acc.saturated()) acc.add(point_vector(point, f.outcome_count));
    } else {
      ++strict;
    }
  }
  report.saturating_rank = acc.rank();
  report.is_facet = strict > 0 && report.saturating_rank == report.polytope_dim - 1;
  return report;
}

}  // namespace svetlichny
