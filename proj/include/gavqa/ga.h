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

// Genetic search over circuit structures with an inner parameter optimizer.
//
// A FitnessModel owns the workload: it optimizes one parameter row of a
// genome at a time and folds the per-row scores into a fitness where larger
// is better. The search itself only ranks, breeds and checkpoints.

#ifndef GAVQA_GA_H_
#define GAVQA_GA_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gavqa/cost.h"
#include "gavqa/genome.h"
#include "gavqa/opt.h"
#include "gavqa/random.h"

namespace gavqa {

struct RowResult {
  std::vector<double> params;
  double score = 0.0;  // per-row quantity fed to FitnessModel::aggregate
  int steps = 0;
};

class FitnessModel {
 public:
  virtual ~FitnessModel() = default;

  virtual int num_qubits() const = 0;
  virtual std::size_t num_rows() const = 0;

  // Optimizes row `row` from `init` with at most `budget` optimizer steps
  // (Adam iterations or objective evaluations, model-specific). Must be
  // re-entrant: rows and genomes are optimized concurrently.
  virtual RowResult optimize_row(const CircuitGenome& genome, std::size_t row,
                                 std::span<const double> init, int budget,
                                 double threshold) const = 0;

  virtual double aggregate(std::span<const double> scores) const = 0;
  virtual bool meets_threshold(double fitness, double threshold) const = 0;
};

// Multi-target compilation: row j maximizes kernel(target_j) with Adam and
// parameter-shift gradients; the row score is that kernel. Fitness is the
// plain mean of the kernels, or the weighted sum when entry weights are set.
class CompilationModel : public FitnessModel {
 public:
  CompilationModel(std::vector<Target> targets, Statevector reference, AdamConfig adam = {});

  // Weights must be non-negative and sum to 1.
  void set_entry_weights(std::vector<double> weights);

  const std::vector<Target>& targets() const { return targets_; }
  const Statevector& reference() const { return reference_; }

  int num_qubits() const override { return reference_.num_qubits(); }
  std::size_t num_rows() const override { return targets_.size(); }
  RowResult optimize_row(const CircuitGenome& genome, std::size_t row,
                         std::span<const double> init, int budget,
                         double threshold) const override;
  double aggregate(std::span<const double> scores) const override;
  bool meets_threshold(double fitness, double threshold) const override;

 private:
  std::vector<Target> targets_;
  Statevector reference_;
  AdamConfig adam_;
  std::vector<double> weights_;  // empty means uniform
};

// Ground-state search: row j minimizes <0|V(theta_j)^dagger H_j V(theta_j)|0>
// with Nelder-Mead, budget counted in objective evaluations. Fitness is the
// negated energy sum; there is no fidelity threshold to meet.
class VqeModel : public FitnessModel {
 public:
  explicit VqeModel(std::vector<PauliSum> hamiltonians, NelderMeadOptions options = {});

  const std::vector<PauliSum>& hamiltonians() const { return hamiltonians_; }

  int num_qubits() const override { return hamiltonians_.front().num_qubits(); }
  std::size_t num_rows() const override { return hamiltonians_.size(); }
  RowResult optimize_row(const CircuitGenome& genome, std::size_t row,
                         std::span<const double> init, int budget,
                         double threshold) const override;
  double aggregate(std::span<const double> scores) const override;
  bool meets_threshold(double, double) const override { return false; }

 private:
  std::vector<PauliSum> hamiltonians_;
  NelderMeadOptions options_;
};

struct GAConfig {
  int pop_size = 8;        // n_V
  int generations = 10;    // n_gene
  int n_iter = 100;        // inner optimizer budget per row
  double threshold = 0.01;
  int target_depth = 9;
  double mutation_rate = 0.01;
  int elite_count = 2;
  int final_budget_factor = 10;  // final stage runs factor * n_iter
  std::uint64_t seed = 0;
  int workers = 1;

  void validate() const;
};

struct Individual {
  CircuitGenome genome{1, {}};
  ParameterTable params;
  std::vector<double> scores;
  double fitness = 0.0;
};

struct GenerationStats {
  int generation = 0;
  double best_fitness = 0.0;  // best in this generation's population
  double mean_fitness = 0.0;
};

struct GAResult {
  Individual best;
  std::vector<GenerationStats> history;
  bool passed = false;       // threshold met, either during the search or the final stage
  bool final_stage = false;  // the final optimization stage ran
  double search_fitness = 0.0;  // best fitness before the final stage
};

// Draws one uniform [0, 2pi) parameter row per model row and optimizes each
// with n_iter budget.
Individual evaluate_fitness(const CircuitGenome& genome, const FitnessModel& model,
                            const GAConfig& cfg, Rng& rng);

// Indices of the k fittest, descending; ties go to the lower index.
std::vector<std::size_t> select_elite(std::span<const Individual> population, std::size_t k);
std::vector<std::size_t> select_elite(std::span<const double> fitness, std::size_t k);

// One-point crossover at floor(len / 2) of each parent.
std::pair<CircuitGenome, CircuitGenome> crossover(const CircuitGenome& p1, const CircuitGenome& p2);

// Each gene is independently replaced with probability `rate` by a gene of a
// different kind with fresh operands.
CircuitGenome mutate(const CircuitGenome& genome, double rate, Rng& rng);

// Index drawn proportionally to fitness, shifted by the minimum when any
// fitness is negative; uniform if all weights vanish.
std::size_t roulette_select(std::span<const double> fitness, Rng& rng);

// Runs fn(i) for i in [0, n) on up to `workers` threads. Results must be
// written by index; the first exception is rethrown after all workers stop.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

struct Checkpoint {
  int generation = 0;  // last fully evaluated generation
  std::vector<GenerationStats> history;
  std::vector<Individual> population;

  std::string serialize() const;
  static Checkpoint parse(std::string_view text);
};

struct SearchOptions {
  std::optional<std::filesystem::path> checkpoint_path;  // rewritten after every generation
  std::optional<Checkpoint> resume;
  std::function<void(const GenerationStats&)> on_generation;
};

GAResult ga_vqa_search(const FitnessModel& model, const GAConfig& cfg,
                       const SearchOptions& options = {});

struct RiskReport {
  double risk = 0.0;
  double mean_fidelity = 0.0;
  ParameterTable params;
};

// Re-optimizes fresh parameters for every test target on the frozen genome
// (budget iterations each), then evaluates the expected risk.
RiskReport test_risk(const CircuitGenome& genome, std::span<const Target> test_targets,
                     const Statevector& reference, const GAConfig& cfg, int budget);

}  // namespace gavqa

#endif  // GAVQA_GA_H_
