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

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace gavqa {

namespace {

GateKind to_gate_kind(GeneKind kind) {
  switch (kind) {
    case GeneKind::kH: return GateKind::kH;
    case GeneKind::kS: return GateKind::kS;
    case GeneKind::kCX: return GateKind::kCX;
    case GeneKind::kRX: return GateKind::kRX;
    case GeneKind::kRY: return GateKind::kRY;
    case GeneKind::kRZ: return GateKind::kRZ;
  }
  throw std::logic_error("unknown gene kind");
}

int parse_int(std::string_view s, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("genome parse: bad " + std::string(what) + " '" +
                                std::string(s) + "'");
  }
  return value;
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t next = line.find(' ', pos);
    const std::size_t end = next == std::string_view::npos ? line.size() : next;
    out.push_back(line.substr(pos, end - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::string_view strip_prefix(std::string_view token, std::string_view prefix) {
  if (token.substr(0, prefix.size()) != prefix) {
    throw std::invalid_argument("genome parse: expected '" + std::string(prefix) + "' in '" +
                                std::string(token) + "'");
  }
  return token.substr(prefix.size());
}

}  // namespace

int gene_arity(GeneKind kind) { return kind == GeneKind::kCX ? 2 : 1; }

bool gene_is_parametric(GeneKind kind) {
  return kind == GeneKind::kRX || kind == GeneKind::kRY || kind == GeneKind::kRZ;
}

std::string_view gene_name(GeneKind kind) { return gate_name(to_gate_kind(kind)); }

std::optional<GeneKind> gene_kind_from_name(std::string_view name) {
  for (GeneKind k : kGenePool) {
    if (gene_name(k) == name) return k;
  }
  return std::nullopt;
}

CircuitGenome::CircuitGenome(int num_qubits, std::vector<Gene> genes)
    : num_qubits_(num_qubits), genes_(std::move(genes)) {
  if (num_qubits < 1) throw std::invalid_argument("CircuitGenome: num_qubits must be >= 1");
  for (Gene& g : genes_) {
    const int arity = gene_arity(g.kind);
    for (int k = 0; k < arity; ++k) {
      if (g.qubits[k] < 0 || g.qubits[k] >= num_qubits) {
        throw std::invalid_argument("CircuitGenome: operand out of range");
      }
    }
    if (arity == 2 && g.qubits[0] == g.qubits[1]) {
      throw std::invalid_argument("CircuitGenome: CX operands must differ");
    }
    if (arity == 1) g.qubits[1] = -1;
    g.param_slot = gene_is_parametric(g.kind) ? std::optional<int>(param_count_++) : std::nullopt;
  }
}

bool CircuitGenome::operator==(const CircuitGenome& o) const {
  if (num_qubits_ != o.num_qubits_ || genes_.size() != o.genes_.size()) return false;
  for (std::size_t i = 0; i < genes_.size(); ++i) {
    if (!genes_[i].same_structure(o.genes_[i])) return false;
  }
  return true;
}

std::string CircuitGenome::serialize() const {
  std::ostringstream os;
  os << "qubits=" << num_qubits_ << " params=" << param_count_ << '\n';
  for (const Gene& g : genes_) {
    os << gene_name(g.kind) << " q" << g.qubits[0];
    if (gene_arity(g.kind) == 2) os << " q" << g.qubits[1];
    if (g.param_slot) os << " slot" << *g.param_slot;
    os << '\n';
  }
  return os.str();
}

CircuitGenome CircuitGenome::parse(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  if (lines.empty()) throw std::invalid_argument("genome parse: empty input");

  const auto header = split_spaces(lines[0]);
  if (header.size() != 2) throw std::invalid_argument("genome parse: malformed header");
  const int num_qubits = parse_int(strip_prefix(header[0], "qubits="), "qubit count");
  const int params = parse_int(strip_prefix(header[1], "params="), "parameter count");

  std::vector<Gene> genes;
  int next_slot = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto tok = split_spaces(lines[i]);
    const auto kind = gene_kind_from_name(tok[0]);
    if (!kind) throw std::invalid_argument("genome parse: unknown gate kind '" + std::string(tok[0]) + "'");
    const int arity = gene_arity(*kind);
    const std::size_t expected = 1 + arity + (gene_is_parametric(*kind) ? 1 : 0);
    if (tok.size() != expected) {
      throw std::invalid_argument("genome parse: wrong token count on line " + std::to_string(i + 1));
    }
    Gene g{*kind, {0, -1}, std::nullopt};
    for (int k = 0; k < arity; ++k) {
      g.qubits[k] = parse_int(strip_prefix(tok[1 + k], "q"), "qubit index");
    }
    if (gene_is_parametric(*kind)) {
      const int slot = parse_int(strip_prefix(tok[1 + arity], "slot"), "slot");
      if (slot != next_slot) {
        throw std::invalid_argument("genome parse: non-canonical slot numbering on line " +
                                    std::to_string(i + 1));
      }
      ++next_slot;
    }
    genes.push_back(g);
  }
  CircuitGenome genome(num_qubits, std::move(genes));
  if (genome.param_count() != params) {
    throw std::invalid_argument("genome parse: header params=" + std::to_string(params) +
                                " does not match " + std::to_string(genome.param_count()));
  }
  return genome;
}

std::vector<GeneKind> available_kinds(int num_qubits) {
  std::vector<GeneKind> kinds;
  for (GeneKind k : kGenePool) {
    if (gene_arity(k) <= num_qubits) kinds.push_back(k);
  }
  return kinds;
}

Gene random_gene(GeneKind kind, int num_qubits, Rng& rng) {
  if (gene_arity(kind) == 2) {
    if (num_qubits < 2) throw std::invalid_argument("random_gene: CX needs two qubits");
    std::uniform_int_distribution<int> pick(0, num_qubits * (num_qubits - 1) - 1);
    const int idx = pick(rng);
    const int control = idx / (num_qubits - 1);
    int target = idx % (num_qubits - 1);
    if (target >= control) ++target;
    return Gene::cx(control, target);
  }
  std::uniform_int_distribution<int> pick(0, num_qubits - 1);
  return Gene::one(kind, pick(rng));
}

CircuitGenome random_genome(int num_qubits, int target_depth, Rng& rng) {
  if (num_qubits < 1) throw std::invalid_argument("random_genome: num_qubits must be >= 1");
  if (target_depth < 1) throw std::invalid_argument("random_genome: target_depth must be >= 1");

  const std::vector<GeneKind> pool = available_kinds(num_qubits);
  std::vector<int> wire_depth(static_cast<std::size_t>(num_qubits), 0);
  std::vector<Gene> genes;
  std::vector<std::array<int, 2>> placements;
  std::vector<GeneKind> open_kinds;

  auto placements_for = [&](GeneKind kind) {
    placements.clear();
    if (gene_arity(kind) == 1) {
      for (int q = 0; q < num_qubits; ++q) {
        if (wire_depth[q] < target_depth) placements.push_back({q, -1});
      }
    } else {
      for (int c = 0; c < num_qubits; ++c) {
        for (int t = 0; t < num_qubits; ++t) {
          if (c != t && std::max(wire_depth[c], wire_depth[t]) < target_depth) {
            placements.push_back({c, t});
          }
        }
      }
    }
  };

  while (true) {
    open_kinds.clear();
    for (GeneKind k : pool) {
      placements_for(k);
      if (!placements.empty()) open_kinds.push_back(k);
    }
    if (open_kinds.empty()) break;
    std::uniform_int_distribution<std::size_t> pick_kind(0, open_kinds.size() - 1);
    const GeneKind kind = open_kinds[pick_kind(rng)];
    placements_for(kind);
    std::uniform_int_distribution<std::size_t> pick_place(0, placements.size() - 1);
    const auto ops = placements[pick_place(rng)];
    Gene g{kind, ops, std::nullopt};
    if (gene_arity(kind) == 1) {
      ++wire_depth[ops[0]];
    } else {
      const int layer = std::max(wire_depth[ops[0]], wire_depth[ops[1]]) + 1;
      wire_depth[ops[0]] = wire_depth[ops[1]] = layer;
    }
    genes.push_back(g);
  }
  return CircuitGenome(num_qubits, std::move(genes));
}

int scheduled_depth(const CircuitGenome& genome) {
  std::vector<int> wire(static_cast<std::size_t>(genome.num_qubits()), 0);
  int depth = 0;
  for (const Gene& g : genome.genes()) {
    int layer = wire[g.qubits[0]] + 1;
    if (gene_arity(g.kind) == 2) layer = std::max(layer, wire[g.qubits[1]] + 1);
    wire[g.qubits[0]] = layer;
    if (gene_arity(g.kind) == 2) wire[g.qubits[1]] = layer;
    depth = std::max(depth, layer);
  }
  return depth;
}

std::vector<GateOp> to_gate_ops(const CircuitGenome& genome, std::span<const double> theta,
                                bool adjoint) {
  if (theta.size() != static_cast<std::size_t>(genome.param_count())) {
    throw std::invalid_argument("bind_and_run: expected " + std::to_string(genome.param_count()) +
                                " parameters, got " + std::to_string(theta.size()));
  }
  std::vector<GateOp> ops;
  ops.reserve(genome.size());
  for (const Gene& g : genome.genes()) {
    GateOp op{to_gate_kind(g.kind), g.qubits, std::nullopt};
    if (g.param_slot) op.theta = theta[static_cast<std::size_t>(*g.param_slot)];
    if (adjoint) {
      if (op.theta) op.theta = -*op.theta;
      if (op.kind == GateKind::kS) op.kind = GateKind::kSdg;
    }
    ops.push_back(op);
  }
  if (adjoint) std::reverse(ops.begin(), ops.end());
  return ops;
}

Statevector bind_and_run(const CircuitGenome& genome, std::span<const double> theta,
                         Statevector input, bool adjoint) {
  if (input.num_qubits() != genome.num_qubits()) {
    throw std::invalid_argument("bind_and_run: state/genome qubit count mismatch");
  }
  const std::vector<GateOp> ops = to_gate_ops(genome, theta, adjoint);
  apply_gates(input, ops);
  return input;
}

CircuitMetrics metrics(const CircuitGenome& genome) {
  CircuitMetrics m;
  m.depth = scheduled_depth(genome);
  for (const Gene& g : genome.genes()) {
    (gene_arity(g.kind) == 2 ? m.two_qubit_gates : m.one_qubit_gates) += 1;
  }
  m.param_count = genome.param_count();
  return m;
}

}  // namespace gavqa
