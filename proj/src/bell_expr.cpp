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

#include "svetlichny/bell_expr.hpp"

#include <algorithm>
#include <string>

#include "svetlichny/errors.hpp"

namespace svetlichny {

namespace {

int mod(int value, int d) {
  int r = value % d;
  return r < 0 ? r + d : r;
}

std::vector<int> residues_of_outcomes(int m, int d) {
  std::size_t n = static_cast<std::size_t>(checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(m)));
  std::vector<int> residues(n);
  for (std::size_t a = 0; a < n; ++a) {
    residues[a] = digit_sum(static_cast<OutcomeIndex>(a), m, d) % d;
  }
  return residues;
}

}  // namespace

Bracket prime_rule(Bracket b, int d) {
  if (b.star) {
    return Bracket{false, b.offset};
  }
  return Bracket{true, mod(b.offset + 1, d)};
}

int bracket_value(Bracket b, int outcome_sum, int d) {
  int inside = outcome_sum + b.offset;
  return mod(b.star ? -inside : inside, d);
}

BellExpression::BellExpression(int m, int d, Form form, std::vector<Term> terms, std::int64_t bound,
                               Direction direction, BoundModel bound_model)
    : m_(m), d_(d), form_(form), terms_(std::move(terms)), bound_(bound), direction_(direction), bound_model_(bound_model) {
  if (m < 1 || m > kMaxParties) {
    throw InvalidArgument("expression: party count must be in [1, " + std::to_string(kMaxParties) + "]");
  }
  if (d < 2) {
    throw InvalidArgument("expression: outcome count must be at least 2");
  }
  if (form == Form::correlator && d != 2) {
    throw InvalidArgument("expression: correlator form requires d = 2");
  }
  const InputIndex input_limit = InputIndex{1} << m;
  for (Term &t : terms_) {
    if (t.inputs >= input_limit) {
      throw InvalidArgument("expression: term inputs exceed " + std::to_string(m) + " parties");
    }
    if (form == Form::bracket) {
      Bracket *b = std::get_if<Bracket>(&t.weight);
      if (b == nullptr) {
        throw InvalidArgument("expression: correlator term in a bracket expression");
      }
      b->offset = ((b->offset % d) + d) % d;
    } else {
      const Correlator *c = std::get_if<Correlator>(&t.weight);
      if (c == nullptr) {
        throw InvalidArgument("expression: bracket term in a correlator expression");
      }
      if (c->coeff != 1 && c->coeff != -1) {
        throw InvalidArgument("expression: correlator coefficients must be +1 or -1");
      }
    }
  }
  std::sort(terms_.begin(), terms_.end(), [](const Term &a, const Term &b) { return a.inputs < b.inputs; });
  auto dup = std::adjacent_find(terms_.begin(), terms_.end(),
                                [](const Term &a, const Term &b) { return a.inputs == b.inputs; });
  if (dup != terms_.end()) {
    throw InvalidArgument("expression: two terms share inputs " + std::to_string(dup->inputs));
  }
}

BellExpression BellExpression::with_bound(std::int64_t bound) const {
  BellExpression copy = *this;
  copy.bound_ = bound;
  return copy;
}

std::int64_t BellExpression::term_value(const Term &term, int outcome_sum) const {
  if (const Bracket *b = std::get_if<Bracket>(&term.weight)) {
    return bracket_value(*b, outcome_sum, d_);
  }
  int sign = (outcome_sum % 2 == 0) ? 1 : -1;
  return std::get<Correlator>(term.weight).coeff * sign;
}

BellExpression build_chsh() {
  std::vector<Term> terms = {
      {0b00, Correlator{+1}},
      {0b01, Correlator{+1}},
      {0b10, Correlator{+1}},
      {0b11, Correlator{-1}},
  };
  return BellExpression(2, 2, Form::correlator, std::move(terms), 2, Direction::upper, BoundModel::local);
}

BellExpression build_svetlichny(int m) {
  if (m < 2 || m > kMaxParties) {
    throw InvalidArgument("build_svetlichny: m must be in [2, " + std::to_string(kMaxParties) + "]");
  }
  BellExpression e = build_chsh();
  for (int k = 3; k <= m; ++k) {
    e = compose(e, prime_map(e));
  }
  return e;
}

BellExpression build_cglmp(int d) {
  if (d < 2) {
    throw InvalidArgument("build_cglmp: d must be at least 2");
  }
  std::vector<Term> terms = {
      {0b00, Bracket{false, 0}},
      {0b01, Bracket{true, 0}},
      {0b10, Bracket{true, 0}},
      {0b11, Bracket{false, d - 1}},
  };
  return BellExpression(2, d, Form::bracket, std::move(terms), d - 1, Direction::lower, BoundModel::local);
}

BellExpression build_smd(int m, int d) {
  if (m < 2 || m > kMaxParties) {
    throw InvalidArgument("build_smd: m must be in [2, " + std::to_string(kMaxParties) + "]");
  }
  BellExpression e = build_cglmp(d);
  for (int k = 3; k <= m; ++k) {
    e = compose(e, prime_map(e));
  }
  return e;
}

BellExpression prime_map(const BellExpression &e) {
  std::vector<Term> terms;
  terms.reserve(e.terms().size());
  if (e.form() == Form::bracket) {
    for (const Term &t : e.terms()) {
      terms.push_back({t.inputs, prime_rule(std::get<Bracket>(t.weight), e.outcomes())});
    }
  } else {
    const InputIndex first = InputIndex{1} << (e.parties() - 1);
    for (const Term &t : e.terms()) {
      int coeff = std::get<Correlator>(t.weight).coeff;
      terms.push_back({t.inputs ^ first, Correlator{(t.inputs & first) ? -coeff : coeff}});
    }
  }
  return BellExpression(e.parties(), e.outcomes(), e.form(), std::move(terms), e.bound(), e.direction(),
                        e.bound_model());
}

BellExpression compose(const BellExpression &e, const BellExpression &e_primed) {
  if (e.parties() != e_primed.parties() || e.outcomes() != e_primed.outcomes() || e.form() != e_primed.form()) {
    throw InvalidArgument("compose: expressions differ in parties, outcomes or form");
  }
  if (e.direction() != e_primed.direction()) {
    throw InvalidArgument("compose: expressions differ in bound direction");
  }
  std::vector<Term> terms;
  terms.reserve(e.terms().size() + e_primed.terms().size());
  for (const Term &t : e.terms()) {
    terms.push_back({(t.inputs << 1) | 1u, t.weight});
  }
  for (const Term &t : e_primed.terms()) {
    terms.push_back({t.inputs << 1, t.weight});
  }
  return BellExpression(e.parties() + 1, e.outcomes(), e.form(), std::move(terms), 2 * e.bound(), e.direction(),
                        BoundModel::bipartition);
}

BellExpression permute_parties(const BellExpression &e, std::span<const int> perm) {
  const int m = e.parties();
  if (static_cast<int>(perm.size()) != m) {
    throw InvalidArgument("permute_parties: permutation has wrong length");
  }
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  for (int p : perm) {
    if (p < 0 || p >= m || seen[static_cast<std::size_t>(p)]) {
      throw InvalidArgument("permute_parties: not a permutation");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  std::vector<Term> terms;
  terms.reserve(e.terms().size());
  for (const Term &t : e.terms()) {
    InputIndex x = 0;
    for (int j = 0; j < m; ++j) {
      if (input_bit(t.inputs, j, m)) {
        x |= InputIndex{1} << (m - 1 - perm[static_cast<std::size_t>(j)]);
      }
    }
    terms.push_back({x, t.weight});
  }
  return BellExpression(m, e.outcomes(), e.form(), std::move(terms), e.bound(), e.direction(), e.bound_model());
}

ResidueTable::ResidueTable(const BellExpression &e)
    : m_(e.parties()),
      d_(e.outcomes()),
      weights_((std::size_t{1} << e.parties()) * static_cast<std::size_t>(e.outcomes()), 0),
      present_(std::size_t{1} << e.parties(), false) {
  for (const Term &t : e.terms()) {
    present_[t.inputs] = true;
    for (int r = 0; r < d_; ++r) {
      weights_[t.inputs * static_cast<std::size_t>(d_) + static_cast<std::size_t>(r)] = e.term_value(t, r);
    }
  }
}

double CoefficientTensor::operator()(InputIndex x, OutcomeIndex a) const {
  std::size_t outcomes = values.size() >> m;
  return values[x * outcomes + a];
}

CoefficientTensor coefficient_tensor(const BellExpression &e) {
  const int m = e.parties();
  const int d = e.outcomes();
  const ResidueTable table(e);
  const std::vector<int> residues = residues_of_outcomes(m, d);
  const std::size_t outcomes = residues.size();
  CoefficientTensor c{m, d, std::vector<double>((std::size_t{1} << m) * outcomes, 0.0)};
  for (InputIndex x = 0; x < (InputIndex{1} << m); ++x) {
    if (!table.present(x)) continue;
    for (std::size_t a = 0; a < outcomes; ++a) {
      c.values[x * outcomes + a] = static_cast<double>(table(x, residues[a]));
    }
  }
  return c;
}

double evaluate(const BellExpression &e, const Behavior &b) {
  if (e.parties() != b.parties() || e.outcomes() != b.outcomes()) {
    throw InvalidArgument("evaluate: expression is (m=" + std::to_string(e.parties()) + ", d=" +
                          std::to_string(e.outcomes()) + ") but behavior is (m=" + std::to_string(b.parties()) +
                          ", d=" + std::to_string(b.outcomes()) + ")");
  }
  const int m = e.parties();
  const int d = e.outcomes();
  const std::vector<int> residues = residues_of_outcomes(m, d);
  double total = 0.0;
  for (const Term &t : e.terms()) {
    std::vector<double> by_residue(static_cast<std::size_t>(d), 0.0);
    std::span<const double> row = b.row(t.inputs);
    for (std::size_t a = 0; a < row.size(); ++a) {
      by_residue[static_cast<std::size_t>(residues[a])] += row[a];
    }
    for (int r = 0; r < d; ++r) {
      total += static_cast<double>(e.term_value(t, r)) * by_residue[static_cast<std::size_t>(r)];
    }
  }
  return total;
}

AffineConversion correlator_to_bracket(const BellExpression &e) {
  if (e.form() != Form::correlator) {
    throw InvalidArgument("correlator_to_bracket: expression is not in correlator form");
  }
  // c * E = 1 - 2 [X] for c = +1 and 1 - 2 [X + 1] for c = -1, since E = 1 - 2 P(X odd).
  std::vector<Term> terms;
  terms.reserve(e.terms().size());
  for (const Term &t : e.terms()) {
    int coeff = std::get<Correlator>(t.weight).coeff;
    terms.push_back({t.inputs, Bracket{false, coeff > 0 ? 0 : 1}});
  }
  const auto n = static_cast<std::int64_t>(terms.size());
  if ((n - e.bound()) % 2 != 0) {
    throw InvalidArgument("correlator_to_bracket: bound has no integer bracket image");
  }
  Direction flipped = e.direction() == Direction::upper ? Direction::lower : Direction::upper;
  BellExpression bracket(e.parties(), 2, Form::bracket, std::move(terms), (n - e.bound()) / 2, flipped,
                         e.bound_model());
  return AffineConversion{std::move(bracket), -2.0, static_cast<double>(n)};
}

}  // namespace svetlichny
