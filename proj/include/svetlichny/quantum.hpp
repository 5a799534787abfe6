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
 * Pure states, Fourier-transform measurements and the Born rule, plus the quantum
 * value, critical visibility and a variational search over measurement phases.
 *
 * Party j measures, for input x_j, in the basis whose column u (outcome u) is
 *   |u> = d^{-1/2} sum_v exp(sign * 2 pi i v (alpha_j(x_j) + u) / d) |v>.
 * For d = 2 and sign = +1 this is the eigenbasis of cos(pi alpha) sigma_x +
 * sin(pi alpha) sigma_y, outcome 0 carrying eigenvalue +1.
 */

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "svetlichny/behavior.hpp"
#include "svetlichny/bell_expr.hpp"

namespace svetlichny {

using Complex = std::complex<double>;

class StateVector {
 public:
  /// Amplitudes in base-d order with party 1 most significant; the norm must be 1 within 1e-12.
  StateVector(int m, int d, std::vector<Complex> amps);

  int parties() const { return m_; }
  int dimension() const { return d_; }
  std::span<const Complex> amplitudes() const { return amps_; }

 private:
  int m_;
  int d_;
  std::vector<Complex> amps_;
};

/// (sum_v |v>^m) / sqrt(d).
StateVector ghz_state(int m, int d);

/// (|0>^m + gamma |1>^m + |2>^m) / sqrt(2 + gamma^2), a qutrit state.
StateVector gamma_state(int m, double gamma);

/// (sqrt(11) - sqrt(3)) / 2.
double optimal_cglmp_gamma();

/// Column-major d x d complex matrix.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int n) : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

  int size() const { return n_; }
  Complex &operator()(int row, int col) { return data_[static_cast<std::size_t>(col * n_ + row)]; }
  const Complex &operator()(int row, int col) const { return data_[static_cast<std::size_t>(col * n_ + row)]; }

 private:
  int n_;
  std::vector<Complex> data_;
};

ComplexMatrix fourier_basis(int d, double alpha, int sign = 1);

struct FourierSettings {
  /// alphas[j] = {alpha for X_j, alpha for X'_j}.
  std::vector<std::array<double, 2>> alphas;
  int sign = 1;
};

class QuantumScenario {
 public:
  QuantumScenario(StateVector state, FourierSettings settings);

  const StateVector &state() const { return state_; }
  const FourierSettings &settings() const { return settings_; }

 private:
  StateVector state_;
  FourierSettings settings_;
};

/// P(a|x) = |<a_1,x_1| ... <a_m,x_m| psi>|^2.
Behavior scenario_behavior(const QuantumScenario &s);

double quantum_value(const BellExpression &e, const QuantumScenario &s);

/// w at which mixing `b` with white noise reaches the bound exactly. Throws
/// NoViolationError when `b` does not violate.
double critical_visibility(const BellExpression &e, const Behavior &b);
double critical_visibility(const BellExpression &e, const QuantumScenario &s);

enum class StateKind { ghz, gamma };

/// Serializable description of a scenario from the diagonal state families.
struct ScenarioSpec {
  int m = 0;
  int d = 0;
  StateKind kind = StateKind::ghz;
  double gamma = 1.0;
  FourierSettings settings;

  QuantumScenario build() const;
};

/// Built-in settings that reach the known optimal violations:
///  d = 2, m in {2, 3}: GHZ state with sigma_x / sigma_y measurements;
///  d = 3, m in {2, 3}: gamma state with the CGLMP Fourier phases.
ScenarioSpec reference_scenario(int m, int d);

struct ScenarioFamily {
  StateKind kind = StateKind::ghz;
  /// Only meaningful for the gamma family; otherwise `gamma` is held fixed.
  bool gamma_free = true;
  double gamma = 1.0;
};

struct OptimizerOptions {
  int restarts = 10;
  double tolerance = 1e-10;
  int grid_points = 24;
  int max_cycles = 500;
  int retries = 3;  ///< fresh starts tried within a restart that finds no violation
  unsigned threads = 1;
};

struct OptimizationResult {
  ScenarioSpec scenario;
  double value = 0.0;
  double violation = 0.0;
  /// Best violation reached by each restart, in restart order.
  std::vector<double> restart_violations;
  std::uint64_t evaluations = 0;
};

/// Multi-start coordinate descent over the 2m phases (and gamma when free), with a
/// grid-bracketed golden-section line search per coordinate. Maximizes the violation.
/// Deterministic for a given seed; restart k always starts from the same point.
OptimizationResult optimize_scenario(const BellExpression &e, const ScenarioFamily &family, std::uint64_t seed,
                                     const OptimizerOptions &options = {});

}  // namespace svetlichny
