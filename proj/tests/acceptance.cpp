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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "svetlichny/bell_expr.hpp"
#include "svetlichny/behaviors.hpp"
#include "svetlichny/polytope.hpp"
#include "svetlichny/quantum.hpp"

using namespace svetlichny;

namespace {

struct Check {
  std::ostringstream detail;
  bool ok = true;

  void require(bool condition, const std::string &what) {
    if (!condition) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
  void near(double value, double target, double tol, const std::string &what) {
    require(std::abs(value - target) <= tol, what + " = " + std::to_string(value));
  }
};

int failures = 0;

void criterion(int id, const std::string &title, double limit_seconds, const std::function<void(Check &)> &body) {
  Check check;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception &e) {
    check.ok = false;
    check.detail << " [exception: " << e.what() << "]";
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.require(elapsed < limit_seconds, "runtime limit " + std::to_string(limit_seconds) + " s");
  if (!check.ok) ++failures;
  std::printf("%s %d: %s (%.3f s)%s\n", check.ok ? "PASS" : "FAIL", id, title.c_str(), elapsed,
              check.detail.str().c_str());
  std::fflush(stdout);
}

Behavior random_behavior(int m, int d, std::mt19937_64 &rng) {
  const std::size_t outcomes = static_cast<std::size_t>(std::pow(d, m));
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> probs((std::size_t{1} << m) * outcomes);
  for (std::size_t x = 0; x < (std::size_t{1} << m); ++x) {
    double total = 0.0;
    for (std::size_t a = 0; a < outcomes; ++a) total += probs[x * outcomes + a] = exp1(rng);
    double sum = 0.0;
    for (std::size_t a = 0; a + 1 < outcomes; ++a) sum += probs[x * outcomes + a] /= total;
    probs[x * outcomes + outcomes - 1] = std::max(0.0, 1.0 - sum);
  }
  return Behavior(m, d, std::move(probs));
}

// Max residual of the best affine fit through the first two points.
double affine_residual(const std::vector<double> &xs, const std::vector<double> &ys) {
  const double slope = (ys[1] - ys[0]) / (xs[1] - xs[0]);
  const double intercept = ys[0] - slope * xs[0];
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, std::abs(slope * xs[i] + intercept - ys[i]));
  return worst;
}

}  // namespace

int main() {
  const double sqrt2 = std::sqrt(2.0);
  const double w_cglmp = 0.6861;

  criterion(1, "S_3 bipartition bound 4 by enumeration and best response", 1.0, [](Check &c) {
    BellExpression e = build_svetlichny(3);
    BoundReport slow = bipartition_bound_exhaustive(e);
    BoundReport fast = bipartition_bound(e);
    c.require(slow.bound == 4, "exhaustive bound " + std::to_string(slow.bound));
    c.require(slow.evaluated == 3072, "vertices " + std::to_string(slow.evaluated));
    c.require(fast.bound == slow.bound, "best response " + std::to_string(fast.bound));
    for (std::size_t i = 0; i < slow.per_partition.size(); ++i) {
      c.require(slow.per_partition[i].bound == 4 && fast.per_partition[i].bound == 4,
                "partition " + slow.per_partition[i].partition.label());
    }
  });

  criterion(2, "S_{3,3} bipartition bound 4 by enumeration", 30.0, [](Check &c) {
    BoundReport r = bipartition_bound_exhaustive(build_smd(3, 3));
    c.require(r.bound == 4, "bound " + std::to_string(r.bound));
    c.require(r.evaluated == 177147, "vertices " + std::to_string(r.evaluated));
  });

  criterion(3, "S_{4,3} bipartition bound 8 by best response", 300.0, [](Check &c) {
    BoundReport r = bipartition_bound(build_smd(4, 3));
    c.require(r.bound == 8, "bound " + std::to_string(r.bound));
    c.require(r.per_partition.size() == 7, "partitions");
  });

  criterion(4, "local bounds CHSH 2 and CGLMP(3) 2", 1.0, [](Check &c) {
    c.require(local_bound(build_chsh()).bound == 2, "CHSH");
    c.require(local_bound(build_cglmp(3)).bound == 2, "CGLMP(3)");
  });

  criterion(5, "quantum values 4 sqrt2, 1.0851, 2.1703", 1.0, [&](Check &c) {
    c.near(quantum_value(build_svetlichny(3), reference_scenario(3, 2).build()), 4 * sqrt2, 1e-9, "S_3");
    c.near(quantum_value(build_cglmp(3), reference_scenario(2, 3).build()), 1.0851, 5e-4, "S_{2,3}");
    c.near(quantum_value(build_smd(3, 3), reference_scenario(3, 3).build()), 2.1703, 5e-4, "S_{3,3}");
  });

  criterion(6, "critical visibilities 1/sqrt2 and 0.6861 (m = 2, 3, optimized 4)", 600.0, [&](Check &c) {
    c.near(critical_visibility(build_svetlichny(3), reference_scenario(3, 2).build()), 1 / sqrt2, 1e-9, "S_3");
    c.near(critical_visibility(build_cglmp(3), reference_scenario(2, 3).build()), w_cglmp, 5e-4, "S_{2,3}");
    c.near(critical_visibility(build_smd(3, 3), reference_scenario(3, 3).build()), w_cglmp, 5e-4, "S_{3,3}");
    BellExpression e = build_smd(4, 3);
    OptimizationResult r = optimize_scenario(e, ScenarioFamily{StateKind::gamma, true, 1.0}, 1);
    c.near(critical_visibility(e, r.scenario.build()), w_cglmp, 5e-4, "optimized S_{4,3}");
  });

  criterion(7, "S_{3,2} and S_{3,3} are facets (exact arithmetic)", 600.0, [](Check &c) {
    for (int d : {2, 3}) {
      FacetReport r = facet_check(build_smd(3, d));
      const int fresh = compute_polytope_dimension(3, d);
      c.require(r.polytope_dim == fresh, "cached dimension matches recomputation for d=" + std::to_string(d));
      c.require(r.is_facet, "is_facet d=" + std::to_string(d));
      c.require(r.saturating_rank == fresh - 1, "saturating rank d=" + std::to_string(d));
    }
  });

  criterion(8, "property suites", 600.0, [](Check &c) {
    // Party-permutation symmetry and the bracket pattern.
    for (int m = 2; m <= 6; ++m) {
      for (int d = 2; d <= 5; ++d) {
        BellExpression e = build_smd(m, d);
        c.require(e.terms().size() == (std::size_t{1} << m), "term count");
        std::vector<int> perm(static_cast<std::size_t>(m));
        std::iota(perm.begin(), perm.end(), 0);
        bool symmetric = true;
        do {
          symmetric = symmetric && permute_parties(e, perm) == e;
        } while (std::next_permutation(perm.begin(), perm.end()));
        c.require(symmetric, "symmetry m=" + std::to_string(m) + " d=" + std::to_string(d));
        for (const Term &t : e.terms()) {
          Bracket expected{false, d - 1};
          for (int k = m - std::popcount(t.inputs); k > 0; --k) expected = prime_rule(expected, d);
          c.require(std::get<Bracket>(t.weight) == expected, "bracket pattern");
        }
      }
    }
    // Affine equivalence of S_{m,2} and S_m.
    std::mt19937_64 rng(2024);
    for (int m = 2; m <= 4; ++m) {
      std::vector<double> xs, ys;
      for (int i = 0; i < 100; ++i) {
        Behavior b = random_behavior(m, 2, rng);
        xs.push_back(evaluate(build_smd(m, 2), b));
        ys.push_back(evaluate(build_svetlichny(m), b));
      }
      c.require(affine_residual(xs, ys) < 1e-12, "affine equivalence m=" + std::to_string(m));
    }
    // Average games CHSH +- CHSH' reach 4 over all 256 two-party assignments.
    BellExpression chsh = build_chsh();
    BellExpression primed = prime_map(chsh);
    double sum_max = -1e9, diff_max = -1e9;
    for (int s = 0; s < 256; ++s) {
      std::vector<double> probs(16, 0.0);
      for (int x = 0; x < 4; ++x) probs[static_cast<std::size_t>(x * 4 + ((s >> (2 * x)) & 3))] = 1.0;
      Behavior b(2, 2, probs);
      sum_max = std::max(sum_max, evaluate(chsh, b) + evaluate(primed, b));
      diff_max = std::max(diff_max, evaluate(chsh, b) - evaluate(primed, b));
    }
    c.require(sum_max == 4.0 && diff_max == 4.0, "average game maximum");
    // Linearity of evaluate.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      Behavior b1 = random_behavior(3, 3, rng), b2 = random_behavior(3, 3, rng);
      double w = unit(rng);
      BellExpression e = build_smd(3, 3);
      c.require(std::abs(evaluate(e, mix(w, b1, b2)) - (w * evaluate(e, b1) + (1 - w) * evaluate(e, b2))) < 1e-12,
                "linearity");
    }
    // Born rule normalization and no-signaling.
    std::uniform_real_distribution<double> phase(-1.5, 1.5);
    for (int m = 2; m <= 3; ++m) {
      for (int d = 2; d <= 3; ++d) {
        for (int i = 0; i < 5; ++i) {
          FourierSettings s;
          for (int j = 0; j < m; ++j) s.alphas.push_back({phase(rng), phase(rng)});
          Behavior b = scenario_behavior(QuantumScenario(d == 3 ? gamma_state(m, 0.5 + unit(rng)) : ghz_state(m, d), s));
          for (InputIndex x = 0; x < b.input_count(); ++x) {
            double total = 0.0;
            for (double p : b.row(x)) total += p;
            c.require(std::abs(total - 1.0) < 1e-12, "normalization");
          }
          c.require(signaling_deviation(b) < 1e-10, "no-signaling");
        }
      }
    }
    // Best response equals enumeration on every m = 3 partition.
    for (int d : {2, 3}) {
      BellExpression e = build_smd(3, d);
      BoundReport fast = bipartition_bound(e);
      BoundReport slow = bipartition_bound_exhaustive(e);
      for (std::size_t i = 0; i < fast.per_partition.size(); ++i) {
        c.require(fast.per_partition[i].bound == slow.per_partition[i].bound,
                  "best response d=" + std::to_string(d) + " " + fast.per_partition[i].partition.label());
      }
    }
  });

  criterion(9, "steering: conditional CHSH = +-2 sqrt2", 1.0, [&](Check &c) {
    Behavior b = scenario_behavior(reference_scenario(3, 2).build());
    BellExpression chsh = build_chsh();
    BellExpression primed = prime_map(chsh);
    // Charlie's sigma_x input steers Alice and Bob to CHSH = +-2 sqrt2, the other input to CHSH'.
    for (int input = 0; input < 2; ++input) {
      const BellExpression &game = reference_scenario(3, 2).settings.alphas[2][static_cast<std::size_t>(input)] == 0.0
                                       ? chsh
                                       : primed;
      const double plus = evaluate(game, conditional_behavior(b, 2, input, 0));
      const double minus = evaluate(game, conditional_behavior(b, 2, input, 1));
      c.near(std::abs(plus), 2 * sqrt2, 1e-9, "outcome 0, input " + std::to_string(input));
      c.near(plus + minus, 0.0, 1e-9, "opposite signs, input " + std::to_string(input));
    }
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
