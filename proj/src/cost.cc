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

#include "gavqa/cost.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gavqa {

namespace {

constexpr double kPsdTol = 1e-9;

// Square root of a PSD Hermitian matrix; eigenvalues in [-kPsdTol, 0) are
// zeroed, anything more negative is rejected.
Matrix psd_sqrt(const Matrix& m, const char* what) {
  const EigenSystem es = eigh(m);
  Eigen::VectorXd roots(es.values.size());
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    const double lambda = es.values[j];
    if (lambda < -kPsdTol) {
      throw std::invalid_argument(std::string(what) + " is not positive semidefinite");
    }
    roots[j] = std::sqrt(std::max(lambda, 0.0));
  }
  return es.vectors * roots.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

int beta_interval(double beta) {
  if (!(beta >= 0.0 && beta <= 10.0)) {
    throw std::invalid_argument("beta " + std::to_string(beta) + " outside [0, 10]");
  }
  if (beta < 4.0) return 0;
  if (beta < 7.0) return 1;
  return 2;
}

}  // namespace

int target_qubits(const Target& t) {
  if (const auto* u = std::get_if<UnitaryTarget>(&t)) {
    const auto dim = static_cast<std::uint64_t>(u->unitary.rows());
    int n = 0;
    while ((std::uint64_t{1} << n) < dim) ++n;
    return n;
  }
  return std::get<StateTarget>(t).state.num_qubits();
}

void TargetSet::validate() const {
  for (const Target& t : targets) {
    if (target_qubits(t) != num_qubits) {
      throw std::invalid_argument("TargetSet: target qubit count differs from set");
    }
  }
  std::vector<int> seen(targets.size(), 0);
  for (auto idx : train) {
    if (idx >= targets.size()) throw std::invalid_argument("TargetSet: train index out of range");
    ++seen[idx];
  }
  for (auto idx : test) {
    if (idx >= targets.size()) throw std::invalid_argument("TargetSet: test index out of range");
    ++seen[idx];
  }
  for (int s : seen) {
    if (s != 1) throw std::invalid_argument("TargetSet: train/test must partition the targets");
  }
}

std::vector<Target> TargetSet::subset(std::span<const std::size_t> indices) const {
  std::vector<Target> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(targets.at(i));
  return out;
}

ParameterTable::ParameterTable(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

std::span<double> ParameterTable::row(std::size_t j) {
  if (j >= rows_) throw std::out_of_range("ParameterTable row");
  return {values_.data() + j * cols_, cols_};
}

std::span<const double> ParameterTable::row(std::size_t j) const {
  if (j >= rows_) throw std::out_of_range("ParameterTable row");
  return {values_.data() + j * cols_, cols_};
}

double kernel(const Target& target, const CircuitGenome& genome, std::span<const double> theta,
              const Statevector& reference) {
  if (target_qubits(target) != genome.num_qubits() ||
      reference.num_qubits() != genome.num_qubits()) {
    throw std::invalid_argument("kernel: dimension mismatch between target, genome and reference");
  }
  if (const auto* u = std::get_if<UnitaryTarget>(&target)) {
    // <psi| U V^dagger |psi>
    const Statevector v_dag_psi = bind_and_run(genome, theta, reference, /*adjoint=*/true);
    const Vector u_v_dag_psi = u->unitary * v_dag_psi.amplitudes();
    return std::min(1.0, std::norm(reference.amplitudes().dot(u_v_dag_psi)));
  }
  const Statevector& t = std::get<StateTarget>(target).state;
  const Statevector v_psi = bind_and_run(genome, theta, reference);
  return std::min(1.0, std::norm(inner_product(t, v_psi)));
}

Statevector target_state(const Target& target, const Statevector& reference) {
  if (const auto* u = std::get_if<UnitaryTarget>(&target)) {
    return apply_matrix(u->unitary.adjoint(), reference);
  }
  return std::get<StateTarget>(target).state;
}

Statevector prepared_state(const Target& target, const CircuitGenome& genome,
                           std::span<const double> theta, const Statevector& reference) {
  const bool adjoint = std::holds_alternative<UnitaryTarget>(target);
  return bind_and_run(genome, theta, reference, adjoint);
}

double multi_target_loss(std::span<const Target> targets, const CircuitGenome& genome,
                         const ParameterTable& params, const Statevector& reference) {
  if (targets.empty()) throw std::invalid_argument("multi_target_loss: empty target set");
  if (params.rows() != targets.size()) {
    throw std::invalid_argument("multi_target_loss: parameter rows do not match targets");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    sum += kernel(targets[j], genome, params.row(j), reference);
  }
  return std::clamp(1.0 - sum / static_cast<double>(targets.size()), 0.0, 1.0);
}

double expected_risk(std::span<const Target> targets, const CircuitGenome& genome,
                     const ParameterTable& params, const Statevector& reference) {
  if (targets.empty()) throw std::invalid_argument("expected_risk: empty test set");
  if (params.rows() != targets.size()) {
    throw std::invalid_argument("expected_risk: parameter rows do not match targets");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    const Matrix diff = projector(target_state(targets[j], reference)) -
                        projector(prepared_state(targets[j], genome, params.row(j), reference));
    const double tn = trace_norm(diff);
    sum += 0.25 * tn * tn;
  }
  return sum / static_cast<double>(targets.size());
}

double uhlmann_fidelity(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  }
  // Tr|sqrt(rho) sqrt(sigma)| via singular values. Taking the square root
  // of sqrt(rho) sigma sqrt(rho) instead would amplify round-off in its
  // near-zero eigenvalues to ~1e-8.
  const double s = trace_norm(psd_sqrt(rho, "rho") * psd_sqrt(sigma, "sigma"));
  return std::clamp(s * s, 0.0, 1.0);
}

double purity(const Matrix& rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("purity: matrix not square");
  // Tr[rho^2] = sum_ij |rho_ij|^2 for Hermitian rho.
  return rho.cwiseAbs2().sum();
}

std::vector<double> beta_entry_weights(std::span<const double> betas, const BetaWeights& weights) {
  std::array<int, 3> counts{0, 0, 0};
  for (double b : betas) ++counts[beta_interval(b)];
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    if (counts[k] > 0) total += weights.w[k];
  }
  if (counts[0] + counts[1] + counts[2] == 0 || total <= 0.0) {
    throw std::invalid_argument("weighted_sum_fidelity: all intervals empty");
  }
  std::vector<double> out;
  out.reserve(betas.size());
  for (double b : betas) {
    const int k = beta_interval(b);
    out.push_back(weights.w[k] / (total * counts[k]));
  }
  return out;
}

double weighted_sum_fidelity(std::span<const double> fidelities, std::span<const double> betas,
                             const BetaWeights& weights) {
  if (fidelities.size() != betas.size()) {
    throw std::invalid_argument("weighted_sum_fidelity: fidelity/beta length mismatch");
  }
  const std::vector<double> e = beta_entry_weights(betas, weights);
  double s = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) s += e[i] * fidelities[i];
  return s;
}

double vqe_energy(std::span<const PauliSum> hamiltonians, const CircuitGenome& genome,
                  const ParameterTable& params) {
  if (params.rows() != hamiltonians.size()) {
    throw std::invalid_argument("vqe_energy: parameter rows do not match Hamiltonians");
  }
  double e = 0.0;
  for (std::size_t j = 0; j < hamiltonians.size(); ++j) {
    if (hamiltonians[j].num_qubits() != genome.num_qubits()) {
      throw std::invalid_argument("vqe_energy: Hamiltonian " + std::to_string(j) +
                                  " qubit count differs from genome");
    }
    const Statevector psi = bind_and_run(genome, params.row(j), Statevector(genome.num_qubits()));
    e += pauli_expectation(psi, hamiltonians[j]);
  }
  return e;
}

double magnetization(const Statevector& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw std::invalid_argument("magnetization: qubit out of range");
  }
  const std::size_t mask = std::size_t{1} << qubit;
  double p0 = 0.0;
  double p1 = 0.0;
  for (std::size_t b = 0; b < state.dim(); ++b) {
    (b & mask ? p1 : p0) += std::norm(state[b]);
  }
  return p0 - p1;
}

}  // namespace gavqa
