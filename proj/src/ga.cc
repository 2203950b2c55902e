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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gavqa/io.h"

namespace gavqa {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

std::vector<bool> shift_flags(const CircuitGenome& genome) {
  // Every parameter slot belongs to exactly one RX/RY/RZ gene.
  return std::vector<bool>(static_cast<std::size_t>(genome.param_count()), true);
}

void fill_uniform_angles(std::span<double> row, Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (double& x : row) x = angle(rng);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos == line.size()) break;
    const std::size_t end = std::min(line.find(' ', pos), line.size());
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

std::string_view expect_key(std::string_view token, std::string_view key) {
  if (token.substr(0, key.size()) != key || token.size() == key.size() ||
      token[key.size()] != '=') {
    throw std::invalid_argument("checkpoint: expected '" + std::string(key) + "=' in '" +
                                std::string(token) + "'");
  }
  return token.substr(key.size() + 1);
}

long parse_count(std::string_view s) {
  const double x = parse_double(s);
  if (x < 0 || x != std::floor(x)) {
    throw std::invalid_argument("checkpoint: bad count '" + std::string(s) + "'");
  }
  return static_cast<long>(x);
}

GenerationStats stats_of(int generation, std::span<const Individual> pop) {
  GenerationStats s;
  s.generation = generation;
  s.best_fitness = pop.front().fitness;
  double sum = 0.0;
  for (const Individual& ind : pop) {
    s.best_fitness = std::max(s.best_fitness, ind.fitness);
    sum += ind.fitness;
  }
  s.mean_fitness = sum / static_cast<double>(pop.size());
  return s;
}

}  // namespace

CompilationModel::CompilationModel(std::vector<Target> targets, Statevector reference,
                                   AdamConfig adam)
    : targets_(std::move(targets)), reference_(std::move(reference)), adam_(adam) {
  if (targets_.empty()) throw std::invalid_argument("CompilationModel: no targets");
  for (const Target& t : targets_) {
    if (target_qubits(t) != reference_.num_qubits()) {
      throw std::invalid_argument("CompilationModel: target and reference qubit counts differ");
    }
  }
}

void CompilationModel::set_entry_weights(std::vector<double> weights) {
  if (weights.size() != targets_.size()) {
    throw std::invalid_argument("CompilationModel: one weight per target required");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("CompilationModel: weights must be finite and >= 0");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("CompilationModel: weights must sum to 1");
  weights_ = std::move(weights);
}

RowResult CompilationModel::optimize_row(const CircuitGenome& genome, std::size_t row,
                                         std::span<const double> init, int budget,
                                         double threshold) const {
  const Target& target = targets_.at(row);
  Objective obj;
  obj.param_count = static_cast<std::size_t>(genome.param_count());
  obj.shift_rule = shift_flags(genome);
  obj.evaluate = [&](std::span<const double> theta) {
    return 1.0 - kernel(target, genome, theta, reference_);
  };
  const VqaResult r = vqa_optimize(obj, init, budget, threshold, adam_);
  return RowResult{r.params, 1.0 - r.value, r.steps};
}

double CompilationModel::aggregate(std::span<const double> scores) const {
  if (scores.size() != targets_.size()) throw std::invalid_argument("aggregate: score count");
  if (weights_.empty()) {
    return std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
  }
  double s = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) s += weights_[i] * scores[i];
  return s;
}

bool CompilationModel::meets_threshold(double fitness, double threshold) const {
  return 1.0 - fitness <= threshold;
}

VqeModel::VqeModel(std::vector<PauliSum> hamiltonians, NelderMeadOptions options)
    : hamiltonians_(std::move(hamiltonians)), options_(options) {
  if (hamiltonians_.empty()) throw std::invalid_argument("VqeModel: no Hamiltonians");
  for (const PauliSum& h : hamiltonians_) {
    if (h.num_qubits() != hamiltonians_.front().num_qubits()) {
      throw std::invalid_argument("VqeModel: Hamiltonians differ in qubit count");
    }
  }
}

RowResult VqeModel::optimize_row(const CircuitGenome& genome, std::size_t row,
                                 std::span<const double> init, int budget, double) const {
  const PauliSum& h = hamiltonians_.at(row);
  const Statevector zero(genome.num_qubits());
  Objective obj;
  obj.param_count = static_cast<std::size_t>(genome.param_count());
  obj.shift_rule = shift_flags(genome);
  obj.evaluate = [&](std::span<const double> theta) {
    return pauli_expectation(bind_and_run(genome, theta, zero), h);
  };
  NelderMeadOptions opts = options_;
  opts.max_evals = std::max(budget, static_cast<int>(obj.param_count) + 1);
  const NelderMeadResult r = nelder_mead(obj, init, opts);
  return RowResult{r.params, r.value, r.evals};
}

double VqeModel::aggregate(std::span<const double> scores) const {
  return -std::accumulate(scores.begin(), scores.end(), 0.0);
}

void GAConfig::validate() const {
  if (pop_size < 2 || pop_size % 2 != 0) {
    throw std::invalid_argument("pop_size must be even and >= 2");
  }
  if (generations < 1) throw std::invalid_argument("generations must be >= 1");
  if (n_iter < 1) throw std::invalid_argument("iters must be >= 1");
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("threshold must lie in (0, 1)");
  }
  if (target_depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw std::invalid_argument("mutation_rate must lie in [0, 1]");
  }
  if (elite_count < 0 || elite_count > pop_size || (pop_size - elite_count) % 2 != 0) {
    throw std::invalid_argument("elite_count must be in [0, pop_size] with an even remainder");
  }
  if (final_budget_factor < 0) throw std::invalid_argument("final_budget_factor must be >= 0");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

Individual evaluate_fitness(const CircuitGenome& genome, const FitnessModel& model,
                            const GAConfig& cfg, Rng& rng) {
  if (genome.num_qubits() != model.num_qubits()) {
    throw std::invalid_argument("evaluate_fitness: genome qubit count differs from workload");
  }
  const std::size_t rows = model.num_rows();
  const auto cols = static_cast<std::size_t>(genome.param_count());
  Individual ind;
  ind.genome = genome;
  ind.params = ParameterTable(rows, cols);
  ind.scores.resize(rows);
  for (std::size_t j = 0; j < rows; ++j) fill_uniform_angles(ind.params.row(j), rng);
  for (std::size_t j = 0; j < rows; ++j) {
    const RowResult r = model.optimize_row(genome, j, ind.params.row(j), cfg.n_iter, cfg.threshold);
    std::copy(r.params.begin(), r.params.end(), ind.params.row(j).begin());
    ind.scores[j] = r.score;
  }
  ind.fitness = model.aggregate(ind.scores);
  return ind;
}

std::vector<std::size_t> select_elite(std::span<const double> fitness, std::size_t k) {
  if (k > fitness.size()) throw std::invalid_argument("select_elite: k exceeds population");
  std::vector<std::size_t> idx(fitness.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });
  idx.resize(k);
  return idx;
}

std::vector<std::size_t> select_elite(std::span<const Individual> population, std::size_t k) {
  std::vector<double> f;
  f.reserve(population.size());
  for (const Individual& ind : population) f.push_back(ind.fitness);
  return select_elite(f, k);
}

std::pair<CircuitGenome, CircuitGenome> crossover(const CircuitGenome& p1,
                                                  const CircuitGenome& p2) {
  if (p1.num_qubits() != p2.num_qubits()) {
    throw std::invalid_argument("crossover: parents differ in qubit count");
  }
  const auto& a = p1.genes();
  const auto& b = p2.genes();
  const auto cut_a = static_cast<std::ptrdiff_t>(a.size() / 2);
  const auto cut_b = static_cast<std::ptrdiff_t>(b.size() / 2);
  std::vector<Gene> c1(a.begin(), a.begin() + cut_a);
  c1.insert(c1.end(), b.begin() + cut_b, b.end());
  std::vector<Gene> c2(b.begin(), b.begin() + cut_b);
  c2.insert(c2.end(), a.begin() + cut_a, a.end());
  return {CircuitGenome(p1.num_qubits(), std::move(c1)),
          CircuitGenome(p1.num_qubits(), std::move(c2))};
}

CircuitGenome mutate(const CircuitGenome& genome, double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("mutate: rate outside [0, 1]");
  const std::vector<GeneKind> pool = available_kinds(genome.num_qubits());
  std::bernoulli_distribution flip(rate);
  std::vector<Gene> genes = genome.genes();
  std::vector<GeneKind> others;
  for (Gene& g : genes) {
    if (!flip(rng)) continue;
    others.clear();
    for (GeneKind k : pool) {
      if (k != g.kind) others.push_back(k);
    }
    if (others.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, others.size() - 1);
    g = random_gene(others[pick(rng)], genome.num_qubits(), rng);
  }
  return CircuitGenome(genome.num_qubits(), std::move(genes));
}

std::size_t roulette_select(std::span<const double> fitness, Rng& rng) {
  if (fitness.empty()) throw std::invalid_argument("roulette_select: empty population");
  const double lo = *std::min_element(fitness.begin(), fitness.end());
  const double shift = lo < 0.0 ? lo : 0.0;
  std::vector<double> w(fitness.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = fitness[i] - shift;
    total += w[i];
  }
  if (!(total > 0.0)) {
    std::uniform_int_distribution<std::size_t> pick(0, fitness.size() - 1);
    return pick(rng);
  }
  std::uniform_real_distribution<double> u(0.0, total);
  const double x = u(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (x < acc && w[i] > 0.0) return i;
  }
  // Rounding at the top end: last entry with positive weight.
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i] > 0.0) return i;
  }
  return w.size() - 1;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(n);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string Checkpoint::serialize() const {
  std::ostringstream os;
  os << "gavqa-checkpoint generation=" << generation << " individuals=" << population.size()
     << " history=" << history.size() << '\n';
  for (const GenerationStats& s : history) {
    os << "history " << s.generation << ' ' << format_double(s.best_fitness) << ' '
       << format_double(s.mean_fitness) << '\n';
  }
  for (const Individual& ind : population) {
    os << "individual fitness=" << format_double(ind.fitness) << " rows=" << ind.params.rows()
       << " genes=" << ind.genome.size() << '\n';
    os << ind.genome.serialize();
    os << "scores";
    for (double s : ind.scores) os << ' ' << format_double(s);
    os << '\n';
    for (std::size_t j = 0; j < ind.params.rows(); ++j) {
      os << "params";
      for (double x : ind.params.row(j)) os << ' ' << format_double(x);
      os << '\n';
    }
  }
  return os.str();
}

Checkpoint Checkpoint::parse(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t at = 0;
  auto next_line = [&]() -> std::string_view {
    if (at >= lines.size()) throw std::invalid_argument("checkpoint: truncated");
    return lines[at++];
  };

  Checkpoint cp;
  const auto head = split_words(next_line());
  if (head.size() != 4 || head[0] != "gavqa-checkpoint") {
    throw std::invalid_argument("checkpoint: bad header");
  }
  cp.generation = static_cast<int>(parse_count(expect_key(head[1], "generation")));
  const long individuals = parse_count(expect_key(head[2], "individuals"));
  const long history = parse_count(expect_key(head[3], "history"));

  for (long h = 0; h < history; ++h) {
    const auto w = split_words(next_line());
    if (w.size() != 4 || w[0] != "history") throw std::invalid_argument("checkpoint: bad history line");
    cp.history.push_back(GenerationStats{static_cast<int>(parse_count(w[1])), parse_double(w[2]),
                                         parse_double(w[3])});
  }
  for (long i = 0; i < individuals; ++i) {
    const auto w = split_words(next_line());
    if (w.size() != 4 || w[0] != "individual") throw std::invalid_argument("checkpoint: bad individual line");
    Individual ind;
    ind.fitness = parse_double(expect_key(w[1], "fitness"));
    const auto rows = static_cast<std::size_t>(parse_count(expect_key(w[2], "rows")));
    const long genes = parse_count(expect_key(w[3], "genes"));
    std::string genome_text;
    for (long g = 0; g <= genes; ++g) {
      genome_text += next_line();
      genome_text += '\n';
    }
    ind.genome = CircuitGenome::parse(genome_text);
    const auto cols = static_cast<std::size_t>(ind.genome.param_count());

    const auto sw = split_words(next_line());
    if (sw.empty() || sw[0] != "scores" || sw.size() != rows + 1) {
      throw std::invalid_argument("checkpoint: bad scores line");
    }
    for (std::size_t j = 1; j < sw.size(); ++j) ind.scores.push_back(parse_double(sw[j]));

    ind.params = ParameterTable(rows, cols);
    for (std::size_t j = 0; j < rows; ++j) {
      const auto pw = split_words(next_line());
      if (pw.empty() || pw[0] != "params" || pw.size() != cols + 1) {
        throw std::invalid_argument("checkpoint: bad params line");
      }
      for (std::size_t c = 0; c < cols; ++c) ind.params.row(j)[c] = parse_double(pw[c + 1]);
    }
    cp.population.push_back(std::move(ind));
  }
  return cp;
}

GAResult ga_vqa_search(const FitnessModel& model, const GAConfig& cfg,
                       const SearchOptions& options) {
  cfg.validate();
  const int n = model.num_qubits();
  const auto pop_size = static_cast<std::size_t>(cfg.pop_size);
  const auto elites = static_cast<std::size_t>(cfg.elite_count);

  GAResult result;
  std::vector<Individual> population(pop_size);
  std::vector<bool> evaluated(pop_size, false);
  int generation = 0;

  auto evaluate_pending = [&](int gen) {
    parallel_for(pop_size, cfg.workers, [&](std::size_t i) {
      if (evaluated[i]) return;
      Rng rng = derive_stream(cfg.seed, StreamTag::kEvaluate,
                              {static_cast<std::uint64_t>(gen), static_cast<std::uint64_t>(i)});
      population[i] = evaluate_fitness(population[i].genome, model, cfg, rng);
    });
    std::fill(evaluated.begin(), evaluated.end(), true);
  };

  auto breed = [&](int from_gen) {
    const std::vector<std::size_t> elite_idx = select_elite(population, elites);
    std::vector<double> fitness;
    for (const Individual& ind : population) fitness.push_back(ind.fitness);
    Rng rng = derive_stream(cfg.seed, StreamTag::kBreed, {static_cast<std::uint64_t>(from_gen)});

    std::vector<Individual> next;
    next.reserve(pop_size);
    for (std::size_t e : elite_idx) next.push_back(population[e]);
    while (next.size() < pop_size) {
      const std::size_t a = roulette_select(fitness, rng);
      const std::size_t b = roulette_select(fitness, rng);
      auto [c1, c2] = crossover(population[a].genome, population[b].genome);
      for (CircuitGenome* c : {&c1, &c2}) {
        Individual child;
        child.genome = mutate(*c, cfg.mutation_rate, rng);
        next.push_back(std::move(child));
      }
    }
    population = std::move(next);
    std::fill(evaluated.begin(), evaluated.end(), false);
    std::fill(evaluated.begin(), evaluated.begin() + static_cast<std::ptrdiff_t>(elites), true);
  };

  if (options.resume) {
    const Checkpoint& cp = *options.resume;
    if (cp.population.size() != pop_size) {
      throw std::invalid_argument("resume: checkpoint population size differs from pop_size");
    }
    for (const Individual& ind : cp.population) {
      if (ind.genome.num_qubits() != n || ind.params.rows() != model.num_rows()) {
        throw std::invalid_argument("resume: checkpoint does not match the workload");
      }
    }
    population = cp.population;
    result.history = cp.history;
    generation = cp.generation;
    std::fill(evaluated.begin(), evaluated.end(), true);
  } else {
    for (std::size_t i = 0; i < pop_size; ++i) {
      Rng rng = derive_stream(cfg.seed, StreamTag::kInitPopulation, {static_cast<std::uint64_t>(i)});
      population[i].genome = random_genome(n, cfg.target_depth, rng);
    }
    evaluate_pending(0);
    result.history.push_back(stats_of(0, population));
  }

  auto checkpoint = [&] {
    if (options.on_generation) options.on_generation(result.history.back());
    if (!options.checkpoint_path) return;
    Checkpoint cp;
    cp.generation = generation;
    cp.history = result.history;
    cp.population = population;
    write_file_atomic(*options.checkpoint_path, cp.serialize());
  };
  if (!options.resume) checkpoint();

  auto best_now = [&] { return population[select_elite(population, 1).front()]; };

  while (!model.meets_threshold(best_now().fitness, cfg.threshold) &&
         generation + 1 < cfg.generations) {
    breed(generation);
    ++generation;
    evaluate_pending(generation);
    result.history.push_back(stats_of(generation, population));
    checkpoint();
  }

  result.best = best_now();
  result.search_fitness = result.best.fitness;
  result.passed = model.meets_threshold(result.best.fitness, cfg.threshold);
  if (result.passed || cfg.final_budget_factor == 0) return result;

  // Final stage: warm-start every row from the best parameters with the
  // larger budget. Best-seen tracking keeps each row at least as good.
  result.final_stage = true;
  Individual refined = result.best;
  const int budget = cfg.final_budget_factor * cfg.n_iter;
  parallel_for(model.num_rows(), cfg.workers, [&](std::size_t j) {
    const RowResult r =
        model.optimize_row(refined.genome, j, result.best.params.row(j), budget, cfg.threshold);
    std::copy(r.params.begin(), r.params.end(), refined.params.row(j).begin());
    refined.scores[j] = r.score;
  });
  refined.fitness = model.aggregate(refined.scores);
  if (refined.fitness >= result.best.fitness) result.best = std::move(refined);
  result.passed = model.meets_threshold(result.best.fitness, cfg.threshold);
  return result;
}

RiskReport test_risk(const CircuitGenome& genome, std::span<const Target> test_targets,
                     const Statevector& reference, const GAConfig& cfg, int budget) {
  if (test_targets.empty()) throw std::invalid_argument("test_risk: empty test set");
  const CompilationModel model(std::vector<Target>(test_targets.begin(), test_targets.end()),
                               reference);
  RiskReport report;
  report.params = ParameterTable(test_targets.size(), static_cast<std::size_t>(genome.param_count()));
  std::vector<double> kernels(test_targets.size());
  parallel_for(test_targets.size(), cfg.workers, [&](std::size_t j) {
    Rng rng = derive_stream(cfg.seed, StreamTag::kTestRisk, {static_cast<std::uint64_t>(j)});
    std::vector<double> init(static_cast<std::size_t>(genome.param_count()));
    fill_uniform_angles(init, rng);
    const RowResult r = model.optimize_row(genome, j, init, budget, cfg.threshold);
    std::copy(r.params.begin(), r.params.end(), report.params.row(j).begin());
    kernels[j] = r.score;
  });
  report.mean_fidelity = model.aggregate(kernels);
  report.risk = expected_risk(test_targets, genome, report.params, reference);
  return report;
}

}  // namespace gavqa
