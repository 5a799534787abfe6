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

#include "svetlichny/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "svetlichny/behaviors.hpp"
#include "svetlichny/errors.hpp"
#include "svetlichny/parallel.hpp"

namespace svetlichny {

namespace {

constexpr double kNormTolerance = 1e-12;

std::size_t power(int base, int exponent) {
  return static_cast<std::size_t>(checked_pow(static_cast<std::uint64_t>(base), static_cast<std::uint64_t>(exponent)));
}

StateVector diagonal_state(int m, int d, const std::vector<double> &weights) {
  std::vector<Complex> amps(power(d, m), 0.0);
  double norm = 0.0;
  for (double w : weights) norm += w * w;
  norm = std::sqrt(norm);
  // |v>^m sits at index v * (d^m - 1) / (d - 1).
  const std::size_t step = (power(d, m) - 1) / static_cast<std::size_t>(d - 1);
  for (std::size_t v = 0; v < weights.size(); ++v) amps[v * step] = weights[v] / norm;
  return StateVector(m, d, std::move(amps));
}

double uniform01(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Maximizes f on [lo, hi] assuming a single peak inside.
template <typename F>
std::pair<double, double> golden_section_max(F &&f, double lo, double hi, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double e = a + inv_phi * (b - a);
  double fc = f(c);
  double fe = f(e);
  while (b - a > width) {
    if (fc >= fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + inv_phi * (b - a);
      fe = f(e);
    }
  }
  return fc >= fe ? std::pair{c, fc} : std::pair{e, fe};
}

constexpr double kGammaMin = 1e-3;
constexpr double kGammaMax = 5.0;

struct Search {
  const BellExpression &e;
  ScenarioSpec spec;
  bool gamma_free;
  std::uint64_t evaluations = 0;

  // A search direction: a sparse set of (parameter, weight) moves applied together.
  using Direction = std::vector<std::pair<std::size_t, double>>;

  std::size_t phase_count() const { return 2 * static_cast<std::size_t>(spec.m); }

  double &parameter(std::size_t i) {
    if (i < phase_count()) return spec.settings.alphas[i / 2][i % 2];
    return spec.gamma;
  }

  double objective() {
    ++evaluations;
    return violation(e, scenario_behavior(spec.build()));
  }

  double objective_at(const Direction &dir, double t) {
    for (auto [i, w] : dir) parameter(i) += w * t;
    double v = objective();
    for (auto [i, w] : dir) parameter(i) -= w * t;
    return v;
  }

  // Single phases, each party's common phase, and opposite phase shifts between pairs of
  // parties. The coupled moves get the search off plateaus that single phases cannot leave.
  std::vector<Direction> phase_directions() const {
    std::vector<Direction> dirs;
    for (std::size_t i = 0; i < phase_count(); ++i) dirs.push_back({{i, 1.0}});
    for (std::size_t j = 0; j < static_cast<std::size_t>(spec.m); ++j) dirs.push_back({{2 * j, 1.0}, {2 * j + 1, 1.0}});
    for (std::size_t j = 0; j < static_cast<std::size_t>(spec.m); ++j) {
      for (std::size_t k = j + 1; k < static_cast<std::size_t>(spec.m); ++k) {
        dirs.push_back({{2 * j, 1.0}, {2 * j + 1, 1.0}, {2 * k, -1.0}, {2 * k + 1, -1.0}});
      }
    }
    // Joint shifts of the primed phases of every group of two or more parties.
    for (std::uint32_t mask = 1; mask < (1u << spec.m); ++mask) {
      if (std::popcount(mask) < 2) continue;
      Direction primed;
      for (std::size_t j = 0; j < static_cast<std::size_t>(spec.m); ++j) {
        if (mask >> j & 1u) primed.push_back({2 * j + 1, 1.0});
      }
      dirs.push_back(std::move(primed));
    }
    return dirs;
  }

  // Grid scan over one period (or the gamma range), then golden section around the best cell.
  double line_search(const Direction &dir, double current, int grid_points, double width) {
    const bool is_gamma = dir.size() == 1 && dir[0].first >= phase_count();
    double lo = -spec.d / 2.0;
    double hi = spec.d / 2.0;
    if (is_gamma) {
      lo = kGammaMin - spec.gamma;
      hi = kGammaMax - spec.gamma;
    }
    const double h = (hi - lo) / grid_points;
    double best_t = 0.0;
    double best_v = current;
    for (int k = 0; k < grid_points; ++k) {
      double t = lo + h * k;
      double v = objective_at(dir, t);
      if (v > best_v) {
        best_v = v;
        best_t = t;
      }
    }
    double a = std::max(best_t - h, lo);
    double b = std::min(best_t + h, hi);
    auto [t, v] = golden_section_max([&](double s) { return objective_at(dir, s); }, a, b, width);
    if (v > best_v) {
      best_v = v;
      best_t = t;
    }
    for (auto [i, w] : dir) parameter(i) += w * best_t;
    return best_v;
  }

  double descend(const std::vector<Direction> &dirs, const OptimizerOptions &options) {
    double value = objective();
    for (int cycle = 0; cycle < options.max_cycles; ++cycle) {
      const double start = value;
      for (const Direction &dir : dirs) value = line_search(dir, value, options.grid_points, 1e-10);
      if (value - start < options.tolerance) break;
    }
    return value;
  }

  // Coordinate descent from the given start. Every proper subset of parties measuring one
  // observable for both inputs is a local maximum at zero violation, so a restart that ends
  // without a violation redraws its start from `retry_seed` a bounded number of times.
  double run(const OptimizerOptions &options, std::uint64_t retry_seed) {
    std::vector<Direction> dirs = phase_directions();
    if (gamma_free) dirs.push_back({{phase_count(), 1.0}});
    double best = descend(dirs, options);
    ScenarioSpec best_spec = spec;
    std::mt19937_64 rng(retry_seed);
    for (int k = 0; k < options.retries && best <= options.tolerance; ++k) {
      for (std::size_t i = 0; i < phase_count(); ++i) parameter(i) = spec.d * uniform01(rng);
      if (gamma_free) spec.gamma = 0.2 + 1.8 * uniform01(rng);
      double v = descend(dirs, options);
      if (v > best) {
        best = v;
        best_spec = spec;
      }
    }
    spec = best_spec;
    return best;
  }
};

double wrap_phase(double alpha, int d) {
  double r = std::fmod(alpha, static_cast<double>(d));
  if (r > d / 2.0) r -= d;
  if (r <= -d / 2.0) r += d;
  return r;
}

}  // namespace

StateVector::StateVector(int m, int d, std::vector<Complex> amps) : m_(m), d_(d), amps_(std::move(amps)) {
  if (m < 1 || m > kMaxParties || d < 2) {
    throw InvalidArgument("state: need m in [1, " + std::to_string(kMaxParties) + "] and d >= 2");
  }
  if (amps_.size() != power(d, m)) {
    throw InvalidArgument("state: expected " + std::to_string(power(d, m)) + " amplitudes");
  }
  double norm = 0.0;
  for (const Complex &a : amps_) norm += std::norm(a);
  if (std::abs(norm - 1.0) > kNormTolerance) {
    throw InvalidArgument("state: squared norm is " + std::to_string(norm));
  }
}

StateVector ghz_state(int m, int d) {
  if (m < 2 || d < 2) throw InvalidArgument("ghz_state: need m >= 2 and d >= 2");
  return diagonal_state(m, d, std::vector<double>(static_cast<std::size_t>(d), 1.0));
}

StateVector gamma_state(int m, double gamma) {
  if (m < 2) throw InvalidArgument("gamma_state: need m >= 2");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma_state: gamma must be positive");
  return diagonal_state(m, 3, {1.0, gamma, 1.0});
}

double optimal_cglmp_gamma() { return (std::sqrt(11.0) - std::sqrt(3.0)) / 2.0; }

ComplexMatrix fourier_basis(int d, double alpha, int sign) {
  if (d < 2) throw InvalidArgument("fourier_basis: d must be at least 2");
  if (sign != 1 && sign != -1) throw InvalidArgument("fourier_basis: sign must be +1 or -1");
  ComplexMatrix basis(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int u = 0; u < d; ++u) {
    for (int v = 0; v < d; ++v) {
      double phase = sign * 2.0 * std::numbers::pi * v * (alpha + u) / d;
      basis(v, u) = std::polar(scale, phase);
    }
  }
  return basis;
}

QuantumScenario::QuantumScenario(StateVector state, FourierSettings settings)
    : state_(std::move(state)), settings_(std::move(settings)) {
  if (static_cast<int>(settings_.alphas.size()) != state_.parties()) {
    throw InvalidArgument("scenario: one pair of phases per party expected");
  }
  if (settings_.sign != 1 && settings_.sign != -1) {
    throw InvalidArgument("scenario: sign must be +1 or -1");
  }
  for (const auto &pair : settings_.alphas) {
    if (!std::isfinite(pair[0]) || !std::isfinite(pair[1])) throw InvalidArgument("scenario: phases must be finite");
  }
}

Behavior scenario_behavior(const QuantumScenario &s) {
  const int m = s.state().parties();
  const int d = s.state().dimension();
  const std::size_t outcomes = power(d, m);
  std::vector<std::array<ComplexMatrix, 2>> bases;
  bases.reserve(static_cast<std::size_t>(m));
  for (const auto &pair : s.settings().alphas) {
    bases.push_back({fourier_basis(d, pair[0], s.settings().sign), fourier_basis(d, pair[1], s.settings().sign)});
  }
  std::vector<double> probs((std::size_t{1} << m) * outcomes);
  std::vector<Complex> work(outcomes);
  std::vector<Complex> next(outcomes);
  for (InputIndex x = 0; x < (InputIndex{1} << m); ++x) {
    work.assign(s.state().amplitudes().begin(), s.state().amplitudes().end());
    for (int j = 0; j < m; ++j) {
      const ComplexMatrix &basis = bases[static_cast<std::size_t>(j)][static_cast<std::size_t>(input_bit(x, j, m))];
      const std::size_t stride = power(d, m - 1 - j);
      const std::size_t block = stride * static_cast<std::size_t>(d);
      // next[.., u, ..] = sum_v conj(basis(v, u)) work[.., v, ..] along party j's axis.
      for (std::size_t hi = 0; hi < outcomes; hi += block) {
        for (std::size_t lo = 0; lo < stride; ++lo) {
          for (int u = 0; u < d; ++u) {
            Complex acc = 0.0;
            for (int v = 0; v < d; ++v) acc += std::conj(basis(v, u)) * work[hi + static_cast<std::size_t>(v) * stride + lo];
            next[hi + static_cast<std::size_t>(u) * stride + lo] = acc;
          }
        }
      }
      std::swap(work, next);
    }
    for (std::size_t a = 0; a < outcomes; ++a) probs[x * outcomes + a] = std::norm(work[a]);
  }
  return Behavior(m, d, std::move(probs));
}

double quantum_value(const BellExpression &e, const QuantumScenario &s) {
  if (e.parties() != s.state().parties() || e.outcomes() != s.state().dimension()) {
    throw InvalidArgument("quantum_value: expression and scenario differ in parties or dimension");
  }
  return evaluate(e, scenario_behavior(s));
}

double critical_visibility(const BellExpression &e, const Behavior &b) {
  const double quantum = evaluate(e, b);
  const double noise = evaluate(e, uniform_behavior(b.parties(), b.outcomes()));
  const double bound = static_cast<double>(e.bound());
  if (violation(e, b) <= 0.0) {
    throw NoViolationError("critical_visibility: behavior does not violate the bound (value " +
                           std::to_string(quantum) + ", bound " + std::to_string(e.bound()) + ")");
  }
  const double w = (bound - noise) / (quantum - noise);
  if (!(w > 0.0 && w <= 1.0)) {
    throw NoViolationError("critical_visibility: white noise alone violates the bound");
  }
  return w;
}

double critical_visibility(const BellExpression &e, const QuantumScenario &s) {
  if (e.parties() != s.state().parties() || e.outcomes() != s.state().dimension()) {
    throw InvalidArgument("critical_visibility: expression and scenario differ in parties or dimension");
  }
  return critical_visibility(e, scenario_behavior(s));
}

QuantumScenario ScenarioSpec::build() const {
  if (static_cast<int>(settings.alphas.size()) != m) {
    throw InvalidArgument("scenario: one pair of phases per party expected");
  }
  if (kind == StateKind::gamma) {
    if (d != 3) throw InvalidArgument("scenario: the gamma state is a qutrit state (d = 3)");
    return QuantumScenario(gamma_state(m, gamma), settings);
  }
  return QuantumScenario(ghz_state(m, d), settings);
}

ScenarioSpec reference_scenario(int m, int d) {
  if (m < 2 || m > 3 || (d != 2 && d != 3)) {
    throw InvalidArgument("reference_scenario: built-in scenarios exist for m in {2, 3} and d in {2, 3}; "
                          "use optimize for other sizes");
  }
  ScenarioSpec spec;
  spec.m = m;
  spec.d = d;
  if (d == 2) {
    // A: sigma_x, sigma_y. B: (sigma_x -+ sigma_y)/sqrt2. C: -sigma_y, sigma_x.
    spec.kind = StateKind::ghz;
    spec.settings.alphas = {{0.0, 0.5}, {-0.25, 0.25}, {-0.5, 0.0}};
  } else {
    spec.kind = StateKind::gamma;
    spec.gamma = optimal_cglmp_gamma();
    spec.settings.alphas = {{0.0, -0.5}, {0.25, -0.25}, {0.5, 0.0}};
  }
  spec.settings.alphas.resize(static_cast<std::size_t>(m));
  return spec;
}

OptimizationResult optimize_scenario(const BellExpression &e, const ScenarioFamily &family, std::uint64_t seed,
                                     const OptimizerOptions &options) {
  const int m = e.parties();
  const int d = e.outcomes();
  if (m < 2) throw InvalidArgument("optimize_scenario: need at least two parties");
  if (family.kind == StateKind::gamma && d != 3) {
    throw InvalidArgument("optimize_scenario: the gamma family needs d = 3");
  }
  if (options.restarts < 1 || options.grid_points < 3 || options.retries < 0) {
    throw InvalidArgument("optimize_scenario: need at least one restart and three grid points");
  }
  const bool gamma_free = family.kind == StateKind::gamma && family.gamma_free;

  // Starting points are drawn up front so restart k does not depend on the thread count.
  std::mt19937_64 rng(seed);
  std::vector<ScenarioSpec> starts;
  std::vector<std::uint64_t> retry_seeds;
  for (int r = 0; r < options.restarts; ++r) {
    ScenarioSpec spec;
    spec.m = m;
    spec.d = d;
    spec.kind = family.kind;
    spec.gamma = family.gamma;
    spec.settings.alphas.resize(static_cast<std::size_t>(m));
    for (auto &pair : spec.settings.alphas) {
      pair[0] = d * uniform01(rng);
      pair[1] = d * uniform01(rng);
    }
    double g = 0.2 + 1.8 * uniform01(rng);
    if (gamma_free) spec.gamma = g;
    starts.push_back(std::move(spec));
    retry_seeds.push_back(rng());
  }

  struct RestartResult {
    ScenarioSpec spec;
    double violation = 0.0;
    std::uint64_t evaluations = 0;
  };
  std::vector<RestartResult> results(starts.size());
  parallel_chunks(starts.size(), options.threads, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t r = begin; r < end; ++r) {
      Search search{e, starts[r], gamma_free};
      double v = search.run(options, retry_seeds[r]);
      results[r] = {search.spec, v, search.evaluations};
    }
    return 0;
  });

  OptimizationResult out;
  std::size_t best = 0;
  for (std::size_t r = 0; r < results.size(); ++r) {
    out.restart_violations.push_back(results[r].violation);
    out.evaluations += results[r].evaluations;
    if (results[r].violation > results[best].violation) best = r;
  }
  out.scenario = results[best].spec;
  for (auto &pair : out.scenario.settings.alphas) {
    pair[0] = wrap_phase(pair[0], d);
    pair[1] = wrap_phase(pair[1], d);
  }
  const Behavior behavior = scenario_behavior(out.scenario.build());
  out.value = evaluate(e, behavior);
  out.violation = violation(e, behavior);
  return out;
}

}  // namespace svetlichny
