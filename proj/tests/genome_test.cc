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


#include "gavqa/genome.h"

#include <random>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"

namespace gavqa {
namespace {

std::vector<double> random_angles(int m, Rng& rng) {
  std::uniform_real_distribution<double> a(0, 2 * kPi);
  std::vector<double> t(m);
  for (double& x : t) x = a(rng);
  return t;
}

TEST(CircuitGenome, SlotsAreCanonical) {
  CircuitGenome g(2, {Gene::one(GeneKind::kRY, 0), Gene::one(GeneKind::kH, 1),
                      Gene::cx(0, 1), Gene::one(GeneKind::kRZ, 1)});
  EXPECT_EQ(g.param_count(), 2);
  EXPECT_EQ(g.genes()[0].param_slot, 0);
  EXPECT_FALSE(g.genes()[1].param_slot.has_value());
  EXPECT_EQ(g.genes()[3].param_slot, 1);
}

TEST(CircuitGenome, RejectsBadOperands) {
  EXPECT_THROW(CircuitGenome(0, {}), std::invalid_argument);
  EXPECT_THROW(CircuitGenome(2, {Gene::one(GeneKind::kH, 2)}), std::invalid_argument);
  EXPECT_THROW(CircuitGenome(2, {Gene::cx(1, 1)}), std::invalid_argument);
}

TEST(CircuitGenome, SerializeExample) {
  CircuitGenome g(2, {Gene::one(GeneKind::kH, 0), Gene::cx(0, 1), Gene::one(GeneKind::kRX, 1)});
  const std::string text = g.serialize();
  EXPECT_EQ(text, "qubits=2 params=1\nH q0\nCX q0 q1\nRX q1 slot0\n");
  EXPECT_EQ(CircuitGenome::parse(text), g);
}

TEST(CircuitGenome, RoundTripIsByteIdentical) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const CircuitGenome g = random_genome(1 + trial % 4, 1 + trial % 9, rng);
    const std::string s = g.serialize();
    EXPECT_EQ(CircuitGenome::parse(s).serialize(), s);
  }
}

TEST(CircuitGenome, ParseIsStrict) {
  EXPECT_THROW(CircuitGenome::parse(""), std::invalid_argument);
  EXPECT_THROW(CircuitGenome::parse("qubits=2\nH q0\n"), std::invalid_argument);
  EXPECT_THROW(CircuitGenome::parse("qubits=2 params=0\nFOO q0\n"), std::invalid_argument);
  EXPECT_THROW(CircuitGenome::parse("qubits=2 params=1\nRX q0\n"), std::invalid_argument);
  EXPECT_THROW(CircuitGenome::parse("qubits=2 params=1\nRX q0 slot1\n"), std::invalid_argument);
  EXPECT_THROW(CircuitGenome::parse("qubits=2 params=0\nCX q0\n"), std::invalid_argument);
  EXPECT_THROW(CircuitGenome::parse("qubits=2 params=2\nRX q0 slot0\n"), std::invalid_argument);
}

TEST(RandomGenome, HitsTargetDepth) {
  Rng rng(2);
  for (int n = 1; n <= 4; ++n) {
    for (int d = 1; d <= 12; ++d) {
      const CircuitGenome g = random_genome(n, d, rng);
      EXPECT_EQ(scheduled_depth(g), d);
      if (n == 1) {
        for (const Gene& gene : g.genes()) EXPECT_NE(gene.kind, GeneKind::kCX);
      }
    }
  }
}

TEST(RandomGenome, SeededStreamIsReproducible) {
  Rng a(3), b(3);
  EXPECT_EQ(random_genome(3, 9, a), random_genome(3, 9, b));
}

TEST(ScheduledDepth, AppendingNeverDecreasesDepth) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 4;
    std::vector<Gene> genes;
    int prev = 0;
    const auto kinds = available_kinds(n);
    for (int k = 0; k < 20; ++k) {
      genes.push_back(random_gene(kinds[rng() % kinds.size()], n, rng));
      const int d = scheduled_depth(CircuitGenome(n, genes));
      EXPECT_GE(d, prev);
      prev = d;
    }
  }
}

TEST(ScheduledDepth, LayersDisjointGates) {
  CircuitGenome g(3, {Gene::one(GeneKind::kH, 0), Gene::one(GeneKind::kH, 1),
                      Gene::cx(0, 1), Gene::one(GeneKind::kRZ, 2), Gene::cx(1, 2)});
  EXPECT_EQ(scheduled_depth(g), 3);
  EXPECT_EQ(metrics(g), (CircuitMetrics{3, 3, 2, 1}));
}

TEST(BindAndRun, MatchesOracleAndAdjointInverts) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 3;
    const CircuitGenome g = random_genome(n, 4, rng);
    const auto theta = random_angles(g.param_count(), rng);
    const Statevector out = bind_and_run(g, theta, Statevector(n));
    const auto u = oracle::circuit_matrix(to_gate_ops(g, theta), n);
    for (int i = 0; i < (1 << n); ++i) EXPECT_LE(std::abs(out[i] - u[i][0]), 1e-12);
    const Statevector back = bind_and_run(g, theta, out, /*adjoint=*/true);
    EXPECT_NEAR(std::abs(back[0]), 1.0, 1e-12);
  }
}

TEST(BindAndRun, RequiresExactParameterCount) {
  CircuitGenome g(1, {Gene::one(GeneKind::kRX, 0), Gene::one(GeneKind::kRY, 0)});
  const std::vector<double> one{0.1};
  const std::vector<double> three{0.1, 0.2, 0.3};
  EXPECT_THROW(bind_and_run(g, one, Statevector(1)), std::invalid_argument);
  EXPECT_THROW(bind_and_run(g, three, Statevector(1)), std::invalid_argument);
  EXPECT_THROW(bind_and_run(g, std::vector<double>{0.1, 0.2}, Statevector(2)),
               std::invalid_argument);
}

TEST(GenePool, NamesRoundTrip) {
  for (GeneKind k : kGenePool) EXPECT_EQ(gene_kind_from_name(gene_name(k)), k);
  EXPECT_FALSE(gene_kind_from_name("RXX").has_value());
  EXPECT_EQ(available_kinds(1).size(), 5u);
  EXPECT_EQ(available_kinds(2).size(), 6u);
}

}  // namespace
}  // namespace gavqa
