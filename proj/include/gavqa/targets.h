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

// Target workloads: Haar-random unitary sets, transverse-field Ising thermal
// states, the time-dependent XY-Z chain, and Pauli-sum Hamiltonian files.

#ifndef GAVQA_TARGETS_H_
#define GAVQA_TARGETS_H_

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

#include "gavqa/cost.h"
#include "gavqa/sim.h"

namespace gavqa {

TargetSet haar_target_set(int num_qubits, int n_train, int n_test, std::uint64_t seed);

// H = sum_i Z_i Z_{i+1} + sum_i X_i on a ring; for two sites the wrapped bond
// doubles the single ZZ coupling.
PauliSum tfim_hamiltonian(int num_sites);

enum class PurificationMethod { kDense, kConventional };

struct ThermalSpec {
  int num_sites = 2;
  double beta = 0.0;
  PurificationMethod method = PurificationMethod::kDense;

  void validate() const;
};

struct GibbsState {
  Matrix rho;
  Eigen::VectorXd energies;  // ascending
  Matrix basis;              // eigenvectors of H, column j pairs with energies[j]
  double partition = 0.0;    // Z(beta) = sum_j exp(-beta E_j)
  Eigen::VectorXd populations;  // p_j = exp(-beta E_j) / Z
};

// rho(beta) = exp(-beta H) / Z. Populations are computed from the
// ground-shifted spectrum, so they stay finite even where Z overflows.
GibbsState gibbs_state(const ThermalSpec& spec);

// sum_j sqrt(p_j) |j>_A |j>_B on 2N qubits; A is qubits 0..N-1.
Statevector tfd_state(const ThermalSpec& spec);
Statevector tfd_state(const GibbsState& gibbs, int num_sites);

// sum_j sqrt(p_j) |j> on N qubits.
Statevector dense_purified_state(const ThermalSpec& spec);
Statevector dense_purified_state(const GibbsState& gibbs, int num_sites);

// sum_j |<j|psi>|^2 |j><j| for the columns |j> of basis.
Matrix dephase_in_basis(const Statevector& psi, const Matrix& basis);

struct DynamicsSpec {
  int num_sites = 2;
  double coupling_j = 1.0;
  double coupling_u = 0.0;
  double field_h = 0.0;
  double total_time = 10.0;
  double dt = 0.1;     // grid spacing
  int substeps = 5;    // K sub-intervals per grid interval
  int trotter_r = 100;

  void validate() const;
  // Number of whole grid intervals in t; throws if t is off the grid.
  int interval_index(double t) const;
};

// Open chain: -J/2 sum [(1 - t/T) X_j X_{j+1} + (1 + t/T) Y_j Y_{j+1}]
//             + u sum Z_j Z_{j+1} + h sum X_j.
PauliSum td_hamiltonian(const DynamicsSpec& spec, double t);

// Ordered product of exp(-i H(s) dt/K) over left endpoints s of every
// elapsed sub-interval up to t.
Matrix exact_propagator(const DynamicsSpec& spec, double t);

// Propagator across grid interval [i dt, (i+1) dt].
Matrix interval_propagator(const DynamicsSpec& spec, int interval);

// Trotter circuit for grid interval [i dt, (i+1) dt]: per sub-interval, r
// repetitions of the per-term rotations (order 1), or of the forward and
// mirrored half-steps (order 2).
std::vector<GateOp> trotter_interval_circuit(const DynamicsSpec& spec, int interval, int order);

// Concatenated Trotter circuit from 0 to t.
std::vector<GateOp> trotter_circuit(const DynamicsSpec& spec, double t, int order);

// Qubits 0..N/2-1 set to |1>, the rest |0>.
Statevector domain_wall_state(int num_sites);

// Line-oriented Pauli-sum blocks: "WORD COEFFICIENT" per line, blocks
// separated by "---", '#' comments and blank lines ignored.
std::vector<PauliSum> parse_pauli_hamiltonians(std::string_view text);
std::vector<PauliSum> load_pauli_hamiltonians(const std::filesystem::path& path);

}  // namespace gavqa

#endif  // GAVQA_TARGETS_H_
