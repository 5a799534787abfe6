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
 * Exact affine rank over vertex sets and facet verification on the bipartition
 * polytope.
 *
 * Ranks are computed by fraction-free Gaussian elimination that keeps the basis in
 * reduced row echelon form. Arithmetic starts in overflow-checked 64-bit integers
 * and moves to arbitrary precision if a product ever overflows.
 */

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "svetlichny/bell_expr.hpp"
#include "svetlichny/behaviors.hpp"

namespace svetlichny {

using BigInt = boost::multiprecision::cpp_int;

struct AffineBasis {
  std::vector<std::int64_t> anchor;
  /// Difference vectors in reduced row echelon form, each with a positive pivot.
  std::vector<std::vector<BigInt>> rows;
  int rank = 0;
};

/// Streaming affine rank. The first vector added becomes the anchor; later vectors
/// contribute their difference from it. Once the rank reaches `cap` further vectors
/// are ignored.
class AffineRankAccumulator {
 public:
  static constexpr int kNoCap = -1;

  explicit AffineRankAccumulator(std::size_t length, int cap = kNoCap);
  ~AffineRankAccumulator();
  AffineRankAccumulator(AffineRankAccumulator &&) noexcept;
  AffineRankAccumulator &operator=(AffineRankAccumulator &&) noexcept;

  /// Returns true when the rank grew.
  bool add(std::span<const std::int64_t> v);

  int rank() const;
  bool saturated() const { return cap_ != kNoCap && rank() >= cap_; }
  bool empty() const { return anchor_.empty(); }
  std::size_t length() const { return length_; }

  /// True once some product needed more than 64 bits.
  bool uses_big_integers() const;

  AffineBasis basis() const;

  /// Integer vectors n spanning all n with n . (v - anchor) = 0 for every added v.
  std::vector<std::vector<BigInt>> null_space() const;

  const std::vector<std::int64_t> &anchor() const { return anchor_; }

 private:
  struct Impl;

  std::size_t length_;
  int cap_;
  std::vector<std::int64_t> anchor_;
  std::unique_ptr<Impl> impl_;
};

/// Affine rank of a finite set of equal-length vectors.
AffineBasis affine_rank(std::span<const std::vector<std::int64_t>> vectors, int cap = AffineRankAccumulator::kNoCap);

/// 0/1 vector of a deterministic behavior in the Behavior linear layout.
std::vector<std::int64_t> point_vector(const DeterministicPoint &point, std::size_t outcome_count);

/// 2^m (d^m - 1): dimension of the normalized probability space.
int ambient_dimension(int m, int d);

/// Affine dimension of the union of all bipartition vertices, by exhaustive
/// enumeration. Results are cached on disk, see polytope_cache_directory().
int polytope_dimension(int m, int d, const EnumerationOptions &options = {});

/// Same, bypassing every cache.
int compute_polytope_dimension(int m, int d, const EnumerationOptions &options = {});

/// $SVETLICHNY_CACHE_DIR, else $XDG_CACHE_HOME/svetlichny, else $HOME/.cache/svetlichny.
/// Empty when none is available.
std::string polytope_cache_directory();

struct FacetReport {
  int polytope_dim = 0;
  int saturating_rank = 0;
  bool is_facet = false;
  std::uint64_t vertices_scanned = 0;
  std::uint64_t saturating_count = 0;
  std::string mode = "exhaustive";
};

/// Exhaustive facet check of `e` with its declared bound on the bipartition polytope.
/// Throws InconsistencyError if any vertex beats the bound.
FacetReport facet_check(const BellExpression &e, const EnumerationOptions &options = {});

struct SamplingOptions {
  std::uint64_t samples = 200'000;
  std::uint64_t seed = 1;
};

/// Dimension of the bipartition polytope certified without full enumeration: a
/// sampled affine hull is grown until every functional vanishing on it is shown to
/// be constant over all vertices by exact best-response optimization.
int certified_polytope_dimension(int m, int d, const SamplingOptions &sampling, const EnumerationOptions &options = {});

/// One-sided facet certificate for sizes beyond exhaustive enumeration. Saturating
/// vertices are drawn as randomized best responses; is_facet is true only when their
/// rank reaches polytope_dim - 1. A false result means "not confirmed".
FacetReport facet_check_sampled(const BellExpression &e, const SamplingOptions &sampling,
                                const EnumerationOptions &options = {});

}  // namespace svetlichny
