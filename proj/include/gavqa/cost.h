// Copyright 2026 The gavqa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Objectives and figures of merit for multi-target compilation.

#ifndef GAVQA_COST_H_
#define GAVQA_COST_H_

#include <array>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "gavqa/genome.h"
#include "gavqa/sim.h"

namespace gavqa {

// A compilation target: either a unitary U (matched through
// |<psi|U V^dagger|psi>|^2) or a state |t> (matched through |<t|V|psi>|^2).
struct UnitaryTarget {
  Matrix unitary;
};
struct StateTarget {
  Statevector state;
};
using Target = std::variant<UnitaryTarget, StateTarget>;

int target_qubits(const Target& t);

struct TargetSet {
  int num_qubits = 0;
  std::vector<Target> targets;
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;

  // Throws unless every target has num_qubits qubits and train/test
  // partition the indices.
  void validate() const;
  std::vector<Target> subset(std::span<const std::size_t> indices) const;
};

// n x m table of per-target parameter rows, stored row-major.
class ParameterTable {
 public:
  ParameterTable() = default;
  ParameterTable(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<double> row(std::size_t j);
  std::span<const double> row(std::size_t j) const;
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

double kernel(const Target& target, const CircuitGenome& genome, std::span<const double> theta,
              const Statevector& reference);

// The pair of pure states whose overlap is the kernel: for a unitary target
// U^dagger|psi> and V^dagger|psi>, for a state target |t> and V|psi>.
Statevector target_state(const Target& target, const Statevector& reference);
Statevector prepared_state(const Target& target, const CircuitGenome& genome,
                           std::span<const double> theta, const Statevector& reference);

// 1 - mean kernel.
double multi_target_loss(std::span<const Target> targets, const CircuitGenome& genome,
                         const ParameterTable& params, const Statevector& reference);

// Mean of (1/4) ||P_target - P_prepared||_1^2 over the targets.
double expected_risk(std::span<const Target> targets, const CircuitGenome& genome,
                     const ParameterTable& params, const Statevector& reference);

double uhlmann_fidelity(const Matrix& rho, const Matrix& sigma);

// Tr[rho^2].
double purity(const Matrix& rho);

// Interval-weighted mean of per-beta fidelities over [0,4), [4,7), [7,10].
// Empty intervals drop out of numerator and denominator.
struct BetaWeights {
  std::array<double, 3> w{2.2, 1.6, 0.9};
};
double weighted_sum_fidelity(std::span<const double> fidelities, std::span<const double> betas,
                             const BetaWeights& weights = {});
// Per-entry weights whose dot product with the fidelities equals
// weighted_sum_fidelity.
std::vector<double> beta_entry_weights(std::span<const double> betas,
                                       const BetaWeights& weights = {});

// sum_j <0|V^dagger(theta_j) H_j V(theta_j)|0>.
double vqe_energy(std::span<const PauliSum> hamiltonians, const CircuitGenome& genome,
                  const ParameterTable& params);

// p(0) - p(1) on one qubit.
double magnetization(const Statevector& state, int qubit);

}  // namespace gavqa

#endif  // GAVQA_COST_H_
