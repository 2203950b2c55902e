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

// Dense statevector and matrix engine.
//
// Basis convention: basis index b encodes qubit k as bit k of b, so qubit 0
// is the least-significant bit. Every module that does index arithmetic
// (partial traces, Pauli words, domain-wall states) relies on this.

#ifndef GAVQA_SIM_H_
#define GAVQA_SIM_H_

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "gavqa/random.h"

namespace gavqa {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

class Statevector {
 public:
  // |0...0> on num_qubits qubits.
  explicit Statevector(int num_qubits);
  // Takes ownership of the amplitudes; length must be 2^num_qubits and the
  // norm must be 1 within 1e-8 (the vector is renormalized exactly).
  Statevector(int num_qubits, Vector amplitudes);

  static Statevector basis(int num_qubits, std::uint64_t index);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }
  double norm() const { return amps_.norm(); }

  // Raw access for gate kernels. Callers must preserve the norm.
  Vector& mutable_amplitudes() { return amps_; }

 private:
  int num_qubits_;
  Vector amps_;
};

enum class GateKind { kH, kS, kSdg, kX, kCX, kRX, kRY, kRZ, kRXX, kRYY, kRZZ };

int gate_arity(GateKind kind);
bool gate_is_parametric(GateKind kind);
std::string_view gate_name(GateKind kind);

// One gate application. Rotations follow R_P(theta) = exp(-i theta/2 P),
// including the two-qubit Pauli rotations RXX, RYY and RZZ. For CX,
// qubits[0] is the control.
struct GateOp {
  GateKind kind;
  std::array<int, 2> qubits{0, -1};
  std::optional<double> theta;
};

// Applies one gate in place. Throws std::invalid_argument on out-of-range
// operands, identical operands for two-qubit gates, or a missing/superfluous
// angle.
void apply_gate(Statevector& state, const GateOp& op);
void apply_gates(Statevector& state, std::span<const GateOp> ops);

Complex inner_product(const Statevector& a, const Statevector& b);

// Hermitian operator as a real-weighted sum of Pauli words. word[k] is the
// Pauli acting on qubit k. Duplicate words are merged in first-appearance
// order; zero coefficients are kept.
struct PauliTerm {
  double coefficient;
  std::string word;
};

class PauliSum {
 public:
  PauliSum(int num_qubits, std::vector<PauliTerm> terms);

  int num_qubits() const { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  // Coefficient of a word, 0 if absent.
  double coefficient(std::string_view word) const;

 private:
  int num_qubits_;
  std::vector<PauliTerm> terms_;
};

double pauli_expectation(const Statevector& state, const PauliSum& h);
Matrix to_matrix(const PauliSum& h);

// Dense-operator checks. Tolerances are absolute, on the max-norm.
bool is_unitary(const Matrix& m, double tol = 1e-10);
bool is_hermitian(const Matrix& m, double tol = 1e-10);
bool is_density(const Matrix& m, double tol = 1e-10);

struct EigenSystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // column j pairs with values[j]
};

EigenSystem eigh(const Matrix& h);

// V diag(exp(scale * lambda)) V^dagger for Hermitian h.
Matrix expm_hermitian(const Matrix& h, Complex scale);

// Ginibre matrix -> QR -> column phases fixed so diag(R) is positive.
Matrix haar_random_unitary(int dim, Rng& rng);

// Traces out the high-order half of the qubits (subsystem B). The kept
// subsystem A is qubits 0..n_a-1.
Matrix partial_trace_b(const Matrix& rho, int n_a);

// Sum of singular values.
double trace_norm(const Matrix& m);

Matrix projector(const Statevector& s);
Statevector apply_matrix(const Matrix& m, const Statevector& s);

}  // namespace gavqa

#endif  // GAVQA_SIM_H_
