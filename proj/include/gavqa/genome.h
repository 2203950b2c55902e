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

// Circuit genomes: the individuals of the genetic search and the ansatz
// structures of the variational stage.

#ifndef GAVQA_GENOME_H_
#define GAVQA_GENOME_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gavqa/random.h"
#include "gavqa/sim.h"

namespace gavqa {

// The gate pool {H, S, CX, RX, RY, RZ}.
enum class GeneKind { kH, kS, kCX, kRX, kRY, kRZ };

inline constexpr std::array<GeneKind, 6> kGenePool = {
    GeneKind::kH, GeneKind::kS, GeneKind::kCX, GeneKind::kRX, GeneKind::kRY, GeneKind::kRZ};

int gene_arity(GeneKind kind);
bool gene_is_parametric(GeneKind kind);
std::string_view gene_name(GeneKind kind);
std::optional<GeneKind> gene_kind_from_name(std::string_view name);

struct Gene {
  GeneKind kind;
  std::array<int, 2> qubits{0, -1};  // qubits[1] is -1 for one-qubit genes
  std::optional<int> param_slot;     // assigned by CircuitGenome

  static Gene one(GeneKind kind, int q) { return Gene{kind, {q, -1}, std::nullopt}; }
  static Gene cx(int control, int target) {
    return Gene{GeneKind::kCX, {control, target}, std::nullopt};
  }

  bool same_structure(const Gene& o) const { return kind == o.kind && qubits == o.qubits; }
};

// Immutable ordered gene sequence. Construction validates operands and
// renumbers parameter slots to 0..m-1 in order of appearance, so every edit
// that rebuilds a genome yields canonical numbering.
class CircuitGenome {
 public:
  CircuitGenome(int num_qubits, std::vector<Gene> genes);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gene>& genes() const { return genes_; }
  std::size_t size() const { return genes_.size(); }
  bool empty() const { return genes_.empty(); }
  int param_count() const { return param_count_; }

  // Text form: header "qubits=<N> params=<m>" then one gene per line,
  // "KIND q<i>[ q<j>][ slot<k>]". Parsing is strict.
  std::string serialize() const;
  static CircuitGenome parse(std::string_view text);

  bool operator==(const CircuitGenome& o) const;

 private:
  int num_qubits_;
  std::vector<Gene> genes_;
  int param_count_ = 0;
};

// Draws genes (kind uniform over the pool, then operands uniform over the
// placements that keep the ASAP depth within target_depth) until no further
// gene fits. The result has scheduled_depth == target_depth. CX is left out
// of the pool for a single qubit.
CircuitGenome random_genome(int num_qubits, int target_depth, Rng& rng);

// Uniformly drawn gene of the given kind with uniform operands.
Gene random_gene(GeneKind kind, int num_qubits, Rng& rng);

// Kinds usable on num_qubits qubits.
std::vector<GeneKind> available_kinds(int num_qubits);

// As-soon-as-possible layering depth.
int scheduled_depth(const CircuitGenome& genome);

// Applies V(theta) (or V^dagger(theta) when adjoint) to input.
Statevector bind_and_run(const CircuitGenome& genome, std::span<const double> theta,
                         Statevector input, bool adjoint = false);

// Lowers the genome to simulator gate ops with bound angles.
std::vector<GateOp> to_gate_ops(const CircuitGenome& genome, std::span<const double> theta,
                                bool adjoint = false);

struct CircuitMetrics {
  int depth = 0;
  int one_qubit_gates = 0;
  int two_qubit_gates = 0;
  int param_count = 0;

  bool operator==(const CircuitMetrics&) const = default;
};

CircuitMetrics metrics(const CircuitGenome& genome);

}  // namespace gavqa

#endif  // GAVQA_GENOME_H_
