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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"

namespace gavqa {
namespace {

GateOp random_op(int n, Rng& rng) {
  static const GateKind kOne[] = {GateKind::kH,  GateKind::kS,  GateKind::kSdg, GateKind::kX,
                                  GateKind::kRX, GateKind::kRY, GateKind::kRZ};
  static const GateKind kTwo[] = {GateKind::kCX, GateKind::kRXX, GateKind::kRYY, GateKind::kRZZ};
  std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  GateOp op{};
  if (n > 1 && std::bernoulli_distribution(0.4)(rng)) {
    op.kind = kTwo[std::uniform_int_distribution<int>(0, 3)(rng)];
    op.qubits[0] = qubit(rng);
    do op.qubits[1] = qubit(rng); while (op.qubits[1] == op.qubits[0]);
  } else {
    op.kind = kOne[std::uniform_int_distribution<int>(0, 6)(rng)];
    op.qubits = {qubit(rng), -1};
  }
  if (gate_is_parametric(op.kind)) op.theta = angle(rng);
  return op;
}

Statevector random_state(int n, Rng& rng) {
  std::normal_distribution<double> g;
  Vector v(1 << n);
  for (auto& a : v) a = Complex(g(rng), g(rng));
  v.normalize();
  return Statevector(n, v);
}

TEST(Statevector, QubitZeroIsLeastSignificantBit) {
  Statevector s(3);
  apply_gate(s, GateOp{GateKind::kX, {0, -1}, std::nullopt});
  EXPECT_NEAR(std::abs(s[1]), 1.0, 1e-15);
  apply_gate(s, GateOp{GateKind::kCX, {0, 2}, std::nullopt});
  EXPECT_NEAR(std::abs(s[5]), 1.0, 1e-15);
}

TEST(Statevector, BellPair) {
  Statevector s(2);
  apply_gate(s, GateOp{GateKind::kH, {0, -1}, std::nullopt});
  apply_gate(s, GateOp{GateKind::kCX, {0, 1}, std::nullopt});
  const double r = 1 / std::sqrt(2.0);
  EXPECT_NEAR(s[0].real(), r, 1e-15);
  EXPECT_NEAR(std::abs(s[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s[2]), 0.0, 1e-15);
  EXPECT_NEAR(s[3].real(), r, 1e-15);
}

TEST(Statevector, RejectsUnnormalizedAmplitudes) {
  Vector v = Vector::Zero(4);
  v[0] = 2.0;
  EXPECT_THROW(Statevector(2, v), std::invalid_argument);
  EXPECT_THROW(Statevector(3, Vector::Ones(4) / 2.0), std::invalid_argument);
}

TEST(ApplyGate, RejectsBadOperands) {
  Statevector s(2);
  EXPECT_THROW(apply_gate(s, GateOp{GateKind::kH, {2, -1}, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(apply_gate(s, GateOp{GateKind::kCX, {1, 1}, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(apply_gate(s, GateOp{GateKind::kRX, {0, -1}, std::nullopt}), std::invalid_argument);
  EXPECT_THROW(apply_gate(s, GateOp{GateKind::kH, {0, -1}, 0.3}), std::invalid_argument);
}

TEST(ApplyGate, RotationSignConvention) {
  // RZ(theta) = diag(e^{-i theta/2}, e^{i theta/2}).
  Statevector s = Statevector::basis(1, 1);
  apply_gate(s, GateOp{GateKind::kRZ, {0, -1}, 0.7});
  EXPECT_NEAR(std::arg(s[1]), 0.35, 1e-14);
  Statevector t(2);
  apply_gate(t, GateOp{GateKind::kRZZ, {0, 1}, 0.7});
  EXPECT_NEAR(std::arg(t[0]), -0.35, 1e-14);
}

TEST(ApplyGate, MatchesKroneckerOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 3;
    const int len = 1 + static_cast<int>(rng() % 10);
    std::vector<GateOp> ops;
    for (int g = 0; g < len; ++g) ops.push_back(random_op(n, rng));
    const Statevector in = random_state(n, rng);
    Statevector s = in;
    apply_gates(s, ops);
    const auto expect = oracle::apply(oracle::circuit_matrix(ops, n), oracle::from_eigen(in.amplitudes()));
    for (std::size_t i = 0; i < expect.size(); ++i) {
      ASSERT_LE(std::abs(s[i] - expect[i]), 1e-10) << "trial " << trial;
    }
  }
}

TEST(ApplyGate, PreservesNorm) {
  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 5;
    Statevector s = random_state(n, rng);
    apply_gate(s, random_op(n, rng));
    ASSERT_NEAR(s.norm(), 1.0, 1e-12);
  }
}

TEST(PauliSum, MergesDuplicateWords) {
  PauliSum h(2, {{1.0, "ZZ"}, {0.5, "XI"}, {2.0, "ZZ"}});
  ASSERT_EQ(h.terms().size(), 2u);
  EXPECT_EQ(h.terms()[0].word, "ZZ");
  EXPECT_DOUBLE_EQ(h.coefficient("ZZ"), 3.0);
  EXPECT_DOUBLE_EQ(h.coefficient("YY"), 0.0);
  EXPECT_THROW(PauliSum(2, {{1.0, "ZQ"}}), std::invalid_argument);
  EXPECT_THROW(PauliSum(2, {{1.0, "ZZZ"}}), std::invalid_argument);
}

TEST(PauliSum, ExpectationAndMatrixMatchOracle) {
  Rng rng(13);
  const char letters[] = "IXYZ";
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 3;
    std::vector<PauliTerm> terms;
    oracle::Mat h = oracle::zeros(1 << n);
    for (int t = 0; t < 4; ++t) {
      std::string w;
      for (int k = 0; k < n; ++k) w += letters[rng() % 4];
      const double c = std::uniform_real_distribution<double>(-1, 1)(rng);
      terms.push_back({c, w});
      const auto p = oracle::pauli_word(w);
      for (int i = 0; i < (1 << n); ++i)
        for (int j = 0; j < (1 << n); ++j) h[i][j] += c * p[i][j];
    }
    const PauliSum sum(n, terms);
    EXPECT_LE(oracle::max_abs_diff(oracle::from_eigen(to_matrix(sum)), h), 1e-12);
    const Statevector s = random_state(n, rng);
    const auto v = oracle::from_eigen(s.amplitudes());
    EXPECT_NEAR(pauli_expectation(s, sum), oracle::dot(v, oracle::apply(h, v)).real(), 1e-12);
  }
}

TEST(Eigh, MatchesJacobiOracle) {
  Rng rng(14);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 7;
    Matrix a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
    const Matrix h = a + a.adjoint();
    const EigenSystem es = eigh(h);
    const auto ref = oracle::hermitian_eigenvalues(oracle::from_eigen(h));
    for (int j = 0; j < d; ++j) EXPECT_NEAR(es.values[j], ref[j], 1e-9);
    EXPECT_LE((es.vectors * es.values.cast<Complex>().asDiagonal() * es.vectors.adjoint() - h)
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
  }
}

TEST(ExpmHermitian, RealTimeEvolutionIsUnitary) {
  const Matrix h = to_matrix(PauliSum(3, {{1.0, "XXI"}, {0.3, "IZZ"}, {-0.7, "YIY"}}));
  for (double t : {-5.0, -0.1, 0.0, 0.25, 1.0, 3.0, 17.0}) {
    EXPECT_TRUE(is_unitary(expm_hermitian(h, Complex(0, -t)), 1e-10)) << t;
  }
  // exp(-i t/2 X) on one qubit is RX(t).
  const Matrix u = expm_hermitian(to_matrix(PauliSum(1, {{0.5, "X"}})), Complex(0, -0.9));
  Statevector s(1);
  apply_gate(s, GateOp{GateKind::kRX, {0, -1}, 0.9});
  EXPECT_LE((u.col(0) - s.amplitudes()).norm(), 1e-14);
}

TEST(HaarRandomUnitary, UnitaryAndSeeded) {
  Rng a(5), b(5);
  const Matrix u = haar_random_unitary(8, a);
  EXPECT_TRUE(is_unitary(u, 1e-10));
  EXPECT_EQ(u, haar_random_unitary(8, b));
}

TEST(HaarRandomUnitary, FirstMomentMatchesHaar) {
  // E|U_00|^2 = 1/d under the Haar measure.
  Rng rng(15);
  const int d = 4;
  double sum = 0;
  const int samples = 4000;
  for (int i = 0; i < samples; ++i) sum += std::norm(haar_random_unitary(d, rng)(0, 0));
  EXPECT_NEAR(sum / samples, 1.0 / d, 0.01);
}

TEST(PartialTrace, MatchesIndexSumOracle) {
  Rng rng(16);
  for (int n = 2; n <= 4; n += 2) {
    const Statevector s = random_state(n, rng);
    const Matrix rho = projector(s);
    const Matrix red = partial_trace_b(rho, n / 2);
    EXPECT_LE(oracle::max_abs_diff(oracle::from_eigen(red),
                                   oracle::partial_trace_high(oracle::from_eigen(rho), n / 2, n / 2)),
              1e-14);
    EXPECT_TRUE(is_density(red));
  }
}

TEST(TraceNorm, PureStateIdentity) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 3;
    const Statevector u = random_state(n, rng);
    const Statevector v = random_state(n, rng);
    const double tn = trace_norm(projector(u) - projector(v));
    EXPECT_NEAR(0.25 * tn * tn, 1.0 - std::norm(inner_product(u, v)), 1e-10);
  }
}

TEST(MatrixChecks, RecognizeProperties) {
  EXPECT_TRUE(is_hermitian(to_matrix(PauliSum(1, {{1.0, "Y"}}))));
  EXPECT_FALSE(is_unitary(2.0 * Matrix::Identity(2, 2)));
  EXPECT_TRUE(is_density(Matrix::Identity(2, 2) / 2.0));
  EXPECT_FALSE(is_density(Matrix::Identity(2, 2)));
}

}  // namespace
}  // namespace gavqa
