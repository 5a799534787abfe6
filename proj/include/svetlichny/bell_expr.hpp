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
 * Bell expressions of the Svetlichny/CGLMP family in correlator form (two outcomes,
 * values (-1)^a) and bracket form (d outcomes, [X] = sum_j j P(X = j mod d)).
 */

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "svetlichny/behavior.hpp"

namespace svetlichny {

enum class Form { correlator, bracket };
enum class Direction { lower, upper };
enum class BoundModel { local, bipartition };

/// [X + offset] or, when starred, [-(X + offset)]. The offset is kept reduced mod d.
struct Bracket {
  bool star = false;
  int offset = 0;

  friend bool operator==(const Bracket &, const Bracket &) = default;
};

/// One application of the prime-map rule: [X] -> [X+1]* and [X]* -> [X].
Bracket prime_rule(Bracket b, int d);

/// Value of a bracket when the outcomes inside it sum to `outcome_sum`.
int bracket_value(Bracket b, int outcome_sum, int d);

/// Correlator coefficient in {-1, +1}.
struct Correlator {
  int coeff = 1;

  friend bool operator==(const Correlator &, const Correlator &) = default;
};

struct Term {
  InputIndex inputs = 0;
  std::variant<Bracket, Correlator> weight;

  friend bool operator==(const Term &, const Term &) = default;
};

/// Immutable full-correlation Bell expression together with its bound.
///
/// Terms are kept sorted by their input index, which is lexicographic order on the
/// input bit-vector with party 1 most significant.
class BellExpression {
 public:
  BellExpression(int m, int d, Form form, std::vector<Term> terms, std::int64_t bound, Direction direction,
                 BoundModel bound_model);

  int parties() const { return m_; }
  int outcomes() const { return d_; }
  Form form() const { return form_; }
  std::span<const Term> terms() const { return terms_; }
  std::int64_t bound() const { return bound_; }
  Direction direction() const { return direction_; }
  BoundModel bound_model() const { return bound_model_; }

  BellExpression with_bound(std::int64_t bound) const;

  /// Integer contribution of `term` when the outcomes sum to `outcome_sum`.
  std::int64_t term_value(const Term &term, int outcome_sum) const;

  /// True when `candidate` is better than `incumbent` in the optimizing direction
  /// (larger for upper bounds, smaller for lower bounds).
  bool improves(std::int64_t candidate, std::int64_t incumbent) const {
    return direction_ == Direction::upper ? candidate > incumbent : candidate < incumbent;
  }

  friend bool operator==(const BellExpression &, const BellExpression &) = default;

 private:
  int m_;
  int d_;
  Form form_;
  std::vector<Term> terms_;
  std::int64_t bound_;
  Direction direction_;
  BoundModel bound_model_;
};

BellExpression build_chsh();
BellExpression build_svetlichny(int m);
BellExpression build_cglmp(int d);
BellExpression build_smd(int m, int d);

/// Bracket form: applies the prime rule to every bracket. Correlator form: a_1 -> a'_1, a'_1 -> -a_1.
BellExpression prime_map(const BellExpression &e);

/// Adds party m+1: terms of `e` take its primed input, terms of `e_primed` its unprimed one.
BellExpression compose(const BellExpression &e, const BellExpression &e_primed);

/// New position of old party j is perm[j] (0-based).
BellExpression permute_parties(const BellExpression &e, std::span<const int> perm);

/// Per-input weights indexed by outcome-sum residue: every expression in this family
/// depends on the outcomes only through their sum mod d.
class ResidueTable {
 public:
  explicit ResidueTable(const BellExpression &e);

  int parties() const { return m_; }
  int outcomes() const { return d_; }
  std::int64_t operator()(InputIndex x, int residue) const { return weights_[x * static_cast<std::size_t>(d_) + residue]; }
  bool present(InputIndex x) const { return present_[x]; }

 private:
  int m_;
  int d_;
  std::vector<std::int64_t> weights_;
  std::vector<bool> present_;
};

/// Dense coefficients c(x, a), input-major like Behavior.
struct CoefficientTensor {
  int m = 0;
  int d = 0;
  std::vector<double> values;

  double operator()(InputIndex x, OutcomeIndex a) const;
};

CoefficientTensor coefficient_tensor(const BellExpression &e);

double evaluate(const BellExpression &e, const Behavior &b);

/// Bracket expression B with correlator value = intercept + slope * B on every behavior.
struct AffineConversion {
  BellExpression bracket;
  double slope;
  double intercept;
};

AffineConversion correlator_to_bracket(const BellExpression &e);

}  // namespace svetlichny
