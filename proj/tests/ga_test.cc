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


#include "gavqa/ga.h"

#include <atomic>
#include <filesystem>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "gavqa/io.h"
#include "gavqa/targets.h"

namespace gavqa {
namespace {

CompilationModel small_model(int n, int targets, std::uint64_t seed) {
  const TargetSet ts = haar_target_set(n, targets, 1, seed);
  return CompilationModel(ts.subset(ts.train), Statevector(n));
}

GAConfig small_config() {
  GAConfig cfg;
  cfg.pop_size = 6;
  cfg.generations = 5;
  cfg.n_iter = 15;
  cfg.threshold = 1e-9;  // unreachable, so every generation runs
  cfg.target_depth = 3;
  cfg.mutation_rate = 0.2;
  cfg.final_budget_factor = 2;
  cfg.seed = 42;
  return cfg;
}

void expect_same_history(const std::vector<GenerationStats>& a,
                         const std::vector<GenerationStats>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].generation, b[i].generation);
    EXPECT_EQ(a[i].best_fitness, b[i].best_fitness);
    EXPECT_EQ(a[i].mean_fitness, b[i].mean_fitness);
  }
}

TEST(SelectElite, DescendingAndStable) {
  const std::vector<double> f{0.3, 0.9, 0.3, 0.1, 0.9};
  EXPECT_EQ(select_elite(f, 3), (std::vector<std::size_t>{1, 4, 0}));
  EXPECT_EQ(select_elite(f, 0).size(), 0u);
  EXPECT_THROW(select_elite(f, 6), std::invalid_argument);
}

TEST(Crossover, ConservesGeneCount) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const CircuitGenome a = random_genome(n, 1 + trial % 7, rng);
    const CircuitGenome b = random_genome(n, 1 + (trial * 3) % 7, rng);
    const auto [c1, c2] = crossover(a, b);
    EXPECT_EQ(c1.size() + c2.size(), a.size() + b.size());
    EXPECT_EQ(c1.num_qubits(), n);
    // Children are canonical genomes in their own right.
    EXPECT_EQ(CircuitGenome::parse(c1.serialize()), c1);
    EXPECT_EQ(CircuitGenome::parse(c2.serialize()), c2);
  }
  EXPECT_THROW(crossover(CircuitGenome(1, {}), CircuitGenome(2, {})), std::invalid_argument);
}

TEST(Mutate, RateBounds) {
  Rng rng(2);
  const CircuitGenome g = random_genome(3, 6, rng);
  EXPECT_EQ(mutate(g, 0.0, rng), g);
  const CircuitGenome m = mutate(g, 1.0, rng);
  ASSERT_EQ(m.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NE(m.genes()[i].kind, g.genes()[i].kind);
  EXPECT_THROW(mutate(g, 1.5, rng), std::invalid_argument);
}

TEST(RouletteSelect, ProportionalAndDegenerateCases) {
  Rng rng(3);
  const std::vector<double> f{0.0, 1.0, 3.0};
  std::vector<int> hits(3, 0);
  for (int i = 0; i < 20000; ++i) ++hits[roulette_select(f, rng)];
  EXPECT_EQ(hits[0], 0);
  EXPECT_NEAR(hits[2] / 20000.0, 0.75, 0.02);
  const std::vector<double> zeros(4, 0.0);
  std::set<std::size_t> seen;
  for (int i = 0; i < 200; ++i) seen.insert(roulette_select(zeros, rng));
  EXPECT_EQ(seen.size(), 4u);
  // Negative fitness is shifted so the worst entry gets zero weight.
  const std::vector<double> neg{-3.0, -1.0};
  for (int i = 0; i < 100; ++i) EXPECT_EQ(roulette_select(neg, rng), 1u);
  EXPECT_THROW(roulette_select(std::vector<double>{}, rng), std::invalid_argument);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  for (int workers : {1, 2, 4, 16}) {
    std::vector<std::atomic<int>> hits(37);
    parallel_for(hits.size(), workers, [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  EXPECT_THROW(parallel_for(8, 3, [](std::size_t i) {
                 if (i == 5) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(CompilationModel, WeightsAndThreshold) {
  CompilationModel m = small_model(1, 3, 1);
  const std::vector<double> s{1.0, 0.5, 0.0};
  EXPECT_NEAR(m.aggregate(s), 0.5, 1e-15);
  m.set_entry_weights({0.5, 0.5, 0.0});
  EXPECT_NEAR(m.aggregate(s), 0.75, 1e-15);
  EXPECT_THROW(m.set_entry_weights({0.5, 0.6, 0.0}), std::invalid_argument);
  EXPECT_THROW(m.set_entry_weights({1.0}), std::invalid_argument);
  EXPECT_TRUE(m.meets_threshold(0.995, 0.01));
  EXPECT_FALSE(m.meets_threshold(0.98, 0.01));
}

TEST(EvaluateFitness, ScoresEveryRow) {
  const CompilationModel m = small_model(2, 3, 2);
  Rng rng(4);
  const CircuitGenome g = random_genome(2, 3, rng);
  GAConfig cfg = small_config();
  const Individual ind = evaluate_fitness(g, m, cfg, rng);
  ASSERT_EQ(ind.scores.size(), 3u);
  EXPECT_EQ(ind.params.rows(), 3u);
  EXPECT_EQ(ind.params.cols(), static_cast<std::size_t>(g.param_count()));
  EXPECT_NEAR(ind.fitness, m.aggregate(ind.scores), 1e-15);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_NEAR(ind.scores[j], kernel(m.targets()[j], g, ind.params.row(j), m.reference()), 1e-12);
  }
}

TEST(Search, ElitismAndPopulationInvariants) {
  const CompilationModel m = small_model(2, 3, 3);
  GAConfig cfg = small_config();
  std::vector<GenerationStats> seen;
  SearchOptions opts;
  opts.on_generation = [&](const GenerationStats& s) { seen.push_back(s); };
  const GAResult r = ga_vqa_search(m, cfg, opts);
  ASSERT_EQ(r.history.size(), 5u);
  expect_same_history(seen, r.history);
  for (std::size_t g = 1; g < r.history.size(); ++g) {
    EXPECT_GE(r.history[g].best_fitness, r.history[g - 1].best_fitness);
    EXPECT_LE(r.history[g].mean_fitness, r.history[g].best_fitness);
  }
  EXPECT_EQ(r.search_fitness, r.history.back().best_fitness);
  EXPECT_TRUE(r.final_stage);
  EXPECT_GE(r.best.fitness, r.search_fitness);
}

TEST(Search, StopsEarlyOnceThresholdIsMet) {
  // One-qubit state target reachable by a single rotation layer.
  CircuitGenome g(1, {Gene::one(GeneKind::kRY, 0), Gene::one(GeneKind::kRZ, 0)});
  const Statevector t = bind_and_run(g, std::vector<double>{0.8, 0.3}, Statevector(1));
  const CompilationModel m({StateTarget{t}}, Statevector(1));
  GAConfig cfg = small_config();
  cfg.threshold = 0.01;
  cfg.n_iter = 100;
  cfg.target_depth = 3;
  cfg.generations = 20;
  const GAResult r = ga_vqa_search(m, cfg);
  EXPECT_TRUE(r.passed);
  EXPECT_FALSE(r.final_stage);
  EXPECT_LT(r.history.size(), 20u);
}

TEST(Search, DeterministicAcrossWorkers) {
  const CompilationModel m = small_model(2, 3, 4);
  GAConfig cfg = small_config();
  cfg.workers = 1;
  const GAResult a = ga_vqa_search(m, cfg);
  cfg.workers = 3;
  const GAResult b = ga_vqa_search(m, cfg);
  expect_same_history(a.history, b.history);
  EXPECT_EQ(a.best.genome, b.best.genome);
  EXPECT_EQ(a.best.params.values(), b.best.params.values());
  EXPECT_EQ(a.best.fitness, b.best.fitness);
}

TEST(Search, ResumeMatchesUninterruptedRun) {
  const CompilationModel m = small_model(2, 2, 5);
  GAConfig cfg = small_config();
  const GAResult full = ga_vqa_search(m, cfg);

  const auto path = std::filesystem::temp_directory_path() / "gavqa_ga_test_checkpoint.txt";
  GAConfig partial = cfg;
  partial.generations = 3;
  partial.final_budget_factor = 0;
  SearchOptions opts;
  opts.checkpoint_path = path;
  ga_vqa_search(m, partial, opts);
  const Checkpoint cp = Checkpoint::parse(read_file(path));
  EXPECT_EQ(cp.generation, 2);
  std::filesystem::remove(path);

  SearchOptions resume;
  resume.resume = cp;
  const GAResult resumed = ga_vqa_search(m, cfg, resume);
  expect_same_history(full.history, resumed.history);
  EXPECT_EQ(full.best.genome, resumed.best.genome);
  EXPECT_EQ(full.best.params.values(), resumed.best.params.values());
}

TEST(Checkpoint, RoundTripIsExact) {
  const CompilationModel m = small_model(2, 2, 6);
  GAConfig cfg = small_config();
  cfg.generations = 2;
  const auto path = std::filesystem::temp_directory_path() / "gavqa_ga_test_roundtrip.txt";
  SearchOptions opts;
  opts.checkpoint_path = path;
  ga_vqa_search(m, cfg, opts);
  const std::string text = read_file(path);
  std::filesystem::remove(path);
  const Checkpoint cp = Checkpoint::parse(text);
  EXPECT_EQ(cp.serialize(), text);
  EXPECT_EQ(cp.population.size(), 6u);
  EXPECT_THROW(Checkpoint::parse(text.substr(0, text.size() / 2)), std::invalid_argument);
  EXPECT_THROW(Checkpoint::parse("garbage"), std::invalid_argument);
}

TEST(Search, ResumeRejectsMismatchedCheckpoint) {
  const CompilationModel m = small_model(2, 2, 7);
  GAConfig cfg = small_config();
  cfg.generations = 1;
  const auto path = std::filesystem::temp_directory_path() / "gavqa_ga_test_mismatch.txt";
  SearchOptions opts;
  opts.checkpoint_path = path;
  ga_vqa_search(m, cfg, opts);
  SearchOptions resume;
  resume.resume = Checkpoint::parse(read_file(path));
  std::filesystem::remove(path);
  cfg.pop_size = 8;
  EXPECT_THROW(ga_vqa_search(m, cfg, resume), std::invalid_argument);
  cfg.pop_size = 6;
  EXPECT_THROW(ga_vqa_search(small_model(2, 3, 7), cfg, resume), std::invalid_argument);
}

TEST(VqeModel, FindsGroundEnergy) {
  const VqeModel m({PauliSum(1, {{1.0, "Z"}, {1.0, "X"}})});
  GAConfig cfg = small_config();
  cfg.target_depth = 2;
  cfg.n_iter = 300;
  cfg.threshold = 0.01;
  const GAResult r = ga_vqa_search(m, cfg);
  EXPECT_FALSE(r.passed);
  EXPECT_NEAR(-r.best.fitness, -std::sqrt(2.0), 1e-6);
}

TEST(GAConfig, Validation) {
  GAConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.elite_count = cfg.pop_size + 1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = GAConfig{};
  cfg.pop_size = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = GAConfig{};
  cfg.mutation_rate = -0.1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(TestRisk, MatchesIdentityWithFidelity) {
  const TargetSet set = haar_target_set(2, 1, 3, 8);
  const std::vector<Target> targets = set.subset(set.test);
  Rng rng(9);
  const CircuitGenome g = random_genome(2, 3, rng);
  GAConfig cfg = small_config();
  const RiskReport rep = test_risk(g, targets, Statevector(2), cfg, 10);
  EXPECT_NEAR(rep.risk, 1.0 - rep.mean_fidelity, 1e-10);
  EXPECT_EQ(rep.params.rows(), 3u);
}

}  // namespace
}  // namespace gavqa
