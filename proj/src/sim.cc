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

#include "gavqa/sim.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace gavqa {

namespace {

constexpr Complex kI{0.0, 1.0};

std::size_t dim_for(int num_qubits) {
  if (num_qubits < 1 || num_qubits > 30) {
    throw std::invalid_argument("num_qubits must be in [1, 30], got " +
                                std::to_string(num_qubits));
  }
  return std::size_t{1} << num_qubits;
}

// 2x2 matrix [a b; c d] on one qubit.
void apply_1q(Complex* s, std::size_t dim, int q, Complex a, Complex b,
              Complex c, Complex d) {
  const std::size_t mask = std::size_t{1} << q;
  for (std::size_t base = 0; base < dim; base += 2 * mask) {
    for (std::size_t i = base; i < base + mask; ++i) {
      const Complex x0 = s[i];
      const Complex x1 = s[i | mask];
      s[i] = a * x0 + b * x1;
      s[i | mask] = c * x0 + d * x1;
    }
  }
}

void apply_cx(Complex* s, std::size_t dim, int control, int target) {
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(s[i], s[i | tmask]);
  }
}

// exp(-i theta/2 P(x)P) for P in {X, Y}; pairs b <-> b ^ (m0|m1).
void apply_pauli_pair_rotation(Complex* s, std::size_t dim, int q0, int q1,
                               double theta, bool is_y) {
  const std::size_t m0 = std::size_t{1} << q0;
  const std::size_t m1 = std::size_t{1} << q1;
  const std::size_t flip = m0 | m1;
  const double c = std::cos(theta / 2);
  const double sn = std::sin(theta / 2);
  for (std::size_t b = 0; b < dim; ++b) {
    if (b & m0) continue;
    const std::size_t p = b ^ flip;
    // PP|p> = phase_b |b>, PP|b> = phase_p |p>.
    double phase_b = 1.0;
    double phase_p = 1.0;
    if (is_y) {
      // Y(x)Y|x y> = -(-1)^(x+y) |~x ~y>, parity is unchanged by the flip.
      const int parity = ((b & m1) ? 1 : 0);
      phase_b = parity ? 1.0 : -1.0;
      phase_p = phase_b;
    }
    const Complex xb = s[b];
    const Complex xp = s[p];
    s[b] = c * xb - kI * sn * phase_b * xp;
    s[p] = c * xp - kI * sn * phase_p * xb;
  }
}

void apply_zz(Complex* s, std::size_t dim, int q0, int q1, double theta) {
  const std::size_t m0 = std::size_t{1} << q0;
  const std::size_t m1 = std::size_t{1} << q1;
  const Complex even = std::polar(1.0, -theta / 2);
  const Complex odd = std::polar(1.0, theta / 2);
  for (std::size_t b = 0; b < dim; ++b) {
    const bool parity = ((b & m0) != 0) != ((b & m1) != 0);
    s[b] *= parity ? odd : even;
  }
}

struct PauliMasks {
  std::uint64_t flip = 0;   // X or Y
  std::uint64_t phase = 0;  // Z or Y
  int num_y = 0;
};

PauliMasks masks_for(std::string_view word) {
  PauliMasks m;
  for (std::size_t k = 0; k < word.size(); ++k) {
    const std::uint64_t bit = std::uint64_t{1} << k;
    switch (word[k]) {
      case 'I':
        break;
      case 'X':
        m.flip |= bit;
        break;
      case 'Y':
        m.flip |= bit;
        m.phase |= bit;
        ++m.num_y;
        break;
      case 'Z':
        m.phase |= bit;
        break;
      default:
        throw std::invalid_argument("invalid Pauli character in word '" +
                                    std::string(word) + "'");
    }
  }
  return m;
}

Complex i_pow(int n) {
  switch (n & 3) {
    case 0:
      return {1, 0};
    case 1:
      return {0, 1};
    case 2:
      return {-1, 0};
    default:
      return {0, -1};
  }
}

}  // namespace

Statevector::Statevector(int num_qubits)
    : num_qubits_(num_qubits), amps_(Vector::Zero(static_cast<Eigen::Index>(dim_for(num_qubits)))) {
  amps_[0] = 1.0;
}

Statevector::Statevector(int num_qubits, Vector amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != dim_for(num_qubits)) {
    throw std::invalid_argument("amplitude vector length does not match 2^num_qubits");
  }
  const double n = amps_.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-8) {
    throw std::invalid_argument("statevector is not normalized (norm " + std::to_string(n) + ")");
  }
  amps_ /= n;
}

Statevector Statevector::basis(int num_qubits, std::uint64_t index) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim_for(num_qubits)));
  if (index >= static_cast<std::uint64_t>(v.size())) {
    throw std::invalid_argument("basis index out of range");
  }
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return Statevector(num_qubits, std::move(v));
}

int gate_arity(GateKind kind) {
  switch (kind) {
    case GateKind::kCX:
    case GateKind::kRXX:
    case GateKind::kRYY:
    case GateKind::kRZZ:
      return 2;
    default:
      return 1;
  }
}

bool gate_is_parametric(GateKind kind) {
  switch (kind) {
    case GateKind::kRX:
    case GateKind::kRY:
    case GateKind::kRZ:
    case GateKind::kRXX:
    case GateKind::kRYY:
    case GateKind::kRZZ:
      return true;
    default:
      return false;
  }
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::kH: return "H";
    case GateKind::kS: return "S";
    case GateKind::kSdg: return "SDG";
    case GateKind::kX: return "X";
    case GateKind::kCX: return "CX";
    case GateKind::kRX: return "RX";
    case GateKind::kRY: return "RY";
    case GateKind::kRZ: return "RZ";
    case GateKind::kRXX: return "RXX";
    case GateKind::kRYY: return "RYY";
    case GateKind::kRZZ: return "RZZ";
  }
  return "?";
}

void apply_gate(Statevector& state, const GateOp& op) {
  const int n = state.num_qubits();
  const int arity = gate_arity(op.kind);
  for (int k = 0; k < arity; ++k) {
    if (op.qubits[k] < 0 || op.qubits[k] >= n) {
      throw std::invalid_argument(std::string(gate_name(op.kind)) + ": operand qubit " +
                                  std::to_string(op.qubits[k]) + " out of range for " +
                                  std::to_string(n) + " qubits");
    }
  }
  if (arity == 2 && op.qubits[0] == op.qubits[1]) {
    throw std::invalid_argument(std::string(gate_name(op.kind)) +
                                ": control and target must differ");
  }
  if (gate_is_parametric(op.kind) != op.theta.has_value()) {
    throw std::invalid_argument(std::string(gate_name(op.kind)) +
                                (op.theta ? ": unexpected angle" : ": missing angle"));
  }

  Complex* s = state.mutable_amplitudes().data();
  const std::size_t dim = state.dim();
  const int q = op.qubits[0];
  static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
  switch (op.kind) {
    case GateKind::kH:
      apply_1q(s, dim, q, kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2);
      break;
    case GateKind::kS:
      apply_1q(s, dim, q, 1.0, 0.0, 0.0, kI);
      break;
    case GateKind::kSdg:
      apply_1q(s, dim, q, 1.0, 0.0, 0.0, -kI);
      break;
    case GateKind::kX:
      apply_1q(s, dim, q, 0.0, 1.0, 1.0, 0.0);
      break;
    case GateKind::kCX:
      apply_cx(s, dim, op.qubits[0], op.qubits[1]);
      break;
    case GateKind::kRX: {
      const double c = std::cos(*op.theta / 2), sn = std::sin(*op.theta / 2);
      apply_1q(s, dim, q, c, -kI * sn, -kI * sn, c);
      break;
    }
    case GateKind::kRY: {
      const double c = std::cos(*op.theta / 2), sn = std::sin(*op.theta / 2);
      apply_1q(s, dim, q, c, -sn, sn, c);
      break;
    }
    case GateKind::kRZ:
      apply_1q(s, dim, q, std::polar(1.0, -*op.theta / 2), 0.0, 0.0,
               std::polar(1.0, *op.theta / 2));
      break;
    case GateKind::kRXX:
      apply_pauli_pair_rotation(s, dim, op.qubits[0], op.qubits[1], *op.theta, false);
      break;
    case GateKind::kRYY:
      apply_pauli_pair_rotation(s, dim, op.qubits[0], op.qubits[1], *op.theta, true);
      break;
    case GateKind::kRZZ:
      apply_zz(s, dim, op.qubits[0], op.qubits[1], *op.theta);
      break;
  }
}

void apply_gates(Statevector& state, std::span<const GateOp> ops) {
  for (const GateOp& op : ops) apply_gate(state, op);
}

Complex inner_product(const Statevector& a, const Statevector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("inner_product: qubit count mismatch");
  }
  return a.amplitudes().dot(b.amplitudes());  // conjugates the left operand
}

PauliSum::PauliSum(int num_qubits, std::vector<PauliTerm> terms) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > 30) {
    throw std::invalid_argument("PauliSum: num_qubits must be in [1, 30]");
  }
  for (PauliTerm& t : terms) {
    if (static_cast<int>(t.word.size()) != num_qubits) {
      throw std::invalid_argument("PauliSum: word '" + t.word + "' has length " +
                                  std::to_string(t.word.size()) + ", expected " +
                                  std::to_string(num_qubits));
    }
    masks_for(t.word);  // validates characters
    if (!std::isfinite(t.coefficient)) {
      throw std::invalid_argument("PauliSum: non-finite coefficient for '" + t.word + "'");
    }
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const PauliTerm& e) { return e.word == t.word; });
    if (it != terms_.end()) {
      it->coefficient += t.coefficient;
    } else {
      terms_.push_back(std::move(t));
    }
  }
}

double PauliSum::coefficient(std::string_view word) const {
  for (const PauliTerm& t : terms_) {
    if (t.word == word) return t.coefficient;
  }
  return 0.0;
}

double pauli_expectation(const Statevector& state, const PauliSum& h) {
  if (state.num_qubits() != h.num_qubits()) {
    throw std::invalid_argument("pauli_expectation: qubit count mismatch");
  }
  const Vector& psi = state.amplitudes();
  const std::size_t dim = state.dim();
  double total = 0.0;
  for (const PauliTerm& t : h.terms()) {
    const PauliMasks m = masks_for(t.word);
    Complex acc = 0.0;
    for (std::size_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(b & m.phase) & 1) ? -1.0 : 1.0;
      acc += std::conj(psi[static_cast<Eigen::Index>(b ^ m.flip)]) * sign *
             psi[static_cast<Eigen::Index>(b)];
    }
    total += t.coefficient * (i_pow(m.num_y) * acc).real();
  }
  return total;
}

Matrix to_matrix(const PauliSum& h) {
  const std::size_t dim = std::size_t{1} << h.num_qubits();
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const PauliTerm& t : h.terms()) {
    const PauliMasks pm = masks_for(t.word);
    const Complex base = t.coefficient * i_pow(pm.num_y);
    for (std::size_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(b & pm.phase) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(b ^ pm.flip), static_cast<Eigen::Index>(b)) += sign * base;
    }
  }
  return m;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const Matrix d = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_density(const Matrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  if (std::abs(m.trace() - Complex(1.0)) > tol) return false;
  return eigh(m).values.minCoeff() >= -tol;
}

EigenSystem eigh(const Matrix& h) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("eigh: matrix must be square and non-empty");
  }
  if (!is_hermitian(h)) throw std::invalid_argument("eigh: matrix is not Hermitian");
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigh: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix expm_hermitian(const Matrix& h, Complex scale) {
  const EigenSystem es = eigh(h);
  Vector d(es.values.size());
  for (Eigen::Index j = 0; j < es.values.size(); ++j) d[j] = std::exp(scale * es.values[j]);
  return es.vectors * d.asDiagonal() * es.vectors.adjoint();
}

Matrix haar_random_unitary(int dim, Rng& rng) {
  if (dim < 2) throw std::invalid_argument("haar_random_unitary: dim must be >= 2");
  std::normal_distribution<double> normal(0.0, 1.0);
  const double scale = 1.0 / std::sqrt(2.0);
  Matrix z(dim, dim);
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(r, c) = Complex(re, im) * scale;
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= (mag > 0.0) ? rjj / mag : Complex(1.0);
  }
  return q;
}

Matrix partial_trace_b(const Matrix& rho, int n_a) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("partial_trace_b: matrix not square");
  if (n_a < 1) throw std::invalid_argument("partial_trace_b: n_a must be >= 1");
  const Eigen::Index da = Eigen::Index{1} << n_a;
  if (rho.rows() != da * da) {
    throw std::invalid_argument("partial_trace_b: total qubits must equal 2 * n_a");
  }
  Matrix out = Matrix::Zero(da, da);
  for (Eigen::Index b = 0; b < da; ++b) {
    out += rho.block(b * da, b * da, da, da);
  }
  return out;
}

double trace_norm(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("trace_norm: matrix not square");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

Matrix projector(const Statevector& s) {
  return s.amplitudes() * s.amplitudes().adjoint();
}

Statevector apply_matrix(const Matrix& m, const Statevector& s) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.cols()) != s.dim()) {
    throw std::invalid_argument("apply_matrix: dimension mismatch");
  }
  return Statevector(s.num_qubits(), m * s.amplitudes());
}

}  // namespace gavqa
