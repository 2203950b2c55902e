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

// End-to-end experiment drivers. Each driver resolves its configuration,
// runs the search, and returns tables ready to be written as CSV.

#ifndef GAVQA_PIPELINES_H_
#define GAVQA_PIPELINES_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gavqa/cost.h"
#include "gavqa/ga.h"
#include "gavqa/targets.h"

namespace gavqa {

enum class Experiment { kBenchmark, kThermal, kDynamics, kVqe };

std::string experiment_name(Experiment e);
Experiment experiment_from_name(const std::string& name);

struct RunConfig {
  Experiment kind = Experiment::kBenchmark;

  int qubits = 3;
  int depth = 9;
  int pop_size = 8;
  int generations = 10;
  int iters = 100;  // Adam steps per row, or objective evaluations for vqe
  double threshold = 0.01;
  std::uint64_t seed = 1;
  int workers = 1;
  double mutation_rate = 0.01;
  int elite_count = 2;
  int final_budget_factor = 10;

  // benchmark
  int train = 20;
  int test = 10;

  // thermal
  PurificationMethod method = PurificationMethod::kDense;
  std::vector<double> betas;
  bool weighted_fitness = true;  // conventional method only
  BetaWeights weights;

  // dynamics
  double coupling_j = 1.0;
  double coupling_u = 0.0;
  double field_h = 0.0;
  double total_time = 10.0;
  double dt = 0.1;
  int substeps = 5;
  int trotter_r = 100;
  std::vector<double> times;
  int observed_qubit = 1;

  // vqe; empty path selects the built-in two-qubit Z0Z1 + 0.5 X0
  std::string hamiltonians_path;

  GAConfig ga_config() const;
  DynamicsSpec dynamics_spec() const;
  void validate() const;
};

// Per-experiment defaults. Thermal defaults depend on the method and size:
// depth 2N with 8 circuits over 16 generations for dense, depth 29 with 16
// circuits over 20 generations for conventional.
RunConfig default_config(Experiment kind, PurificationMethod method = PurificationMethod::kDense,
                         int qubits = 0);

// Every key that applies to cfg.kind, with its current value rendered as
// text; this is what the manifest and --help echo.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg);

// Parses `value` into the field named by `key`; errors name the key.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

// "start:stop:count" (count >= 1, inclusive ends) or a comma list.
std::vector<double> parse_grid(const std::string& text);
std::string format_grid(const std::vector<double>& values);

// Column-oriented numeric table.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  const std::vector<double>& row(std::size_t i) const { return rows.at(i); }
  std::vector<double> column(const std::string& name) const;
  // Header row then one line per row, "%.12e" values.
  std::string to_csv() const;
};

struct RunResult {
  RunConfig config;
  Table results;  // experiment-specific series
  Table history;  // generation, best_fitness, mean_fitness
  std::vector<std::pair<std::string, double>> summary;
  std::string best_circuit;  // genome serialization
  GAResult search;

  double summary_value(const std::string& key) const;
};

// Optional hooks shared by all drivers.
struct DriverOptions {
  std::optional<std::filesystem::path> checkpoint_path;
  std::optional<Checkpoint> resume;
  std::function<void(const GenerationStats&)> on_generation;
};

RunResult run_benchmark(const RunConfig& cfg, const DriverOptions& opts = {});
RunResult run_thermal(const RunConfig& cfg, const DriverOptions& opts = {});
RunResult run_dynamics(const RunConfig& cfg, const DriverOptions& opts = {});
RunResult run_vqe(const RunConfig& cfg, const DriverOptions& opts = {});
RunResult run_experiment(const RunConfig& cfg, const DriverOptions& opts = {});

// Dynamics reference columns without any search: exact, first- and
// second-order Trotter magnetization on cfg.times.
Table dynamics_baselines(const RunConfig& cfg);

// Thermal theory columns (beta, purity, trace) without any search.
Table thermal_theory(int num_sites, const std::vector<double>& betas);

std::vector<PauliSum> builtin_vqe_hamiltonians();
double ground_energy(const PauliSum& h);

// Writes results.csv, history.csv, summary.csv, best_circuit.txt and
// manifest.json into `dir`, each atomically.
void write_outputs(const RunResult& result, const std::filesystem::path& dir,
                   const std::map<std::string, std::string>& manifest_extra = {});

}  // namespace gavqa

#endif  // GAVQA_PIPELINES_H_
