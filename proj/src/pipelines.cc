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

#include "gavqa/pipelines.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gavqa/io.h"
#include "json.hpp"

#ifndef GAVQA_VERSION
#define GAVQA_VERSION "0.0.0"
#endif

namespace gavqa {

namespace {

std::string method_name(PurificationMethod m) {
  return m == PurificationMethod::kDense ? "dense" : "conventional";
}

PurificationMethod method_from_name(const std::string& s) {
  if (s == "dense") return PurificationMethod::kDense;
  if (s == "conventional") return PurificationMethod::kConventional;
  throw std::invalid_argument("expected 'dense' or 'conventional', got '" + s + "'");
}

long long parse_integer(const std::string& s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("expected an integer, got '" + s + "'");
  }
  return v;
}

int parse_int(const std::string& s) {
  const long long v = parse_integer(s);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw std::invalid_argument("integer out of range: '" + s + "'");
  }
  return static_cast<int>(v);
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw std::invalid_argument("expected true or false, got '" + s + "'");
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::size_t end = comma == std::string::npos ? s.size() : comma;
    std::string tok = s.substr(pos, end - pos);
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    out.push_back(parse_double(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

Table history_table(const GAResult& r) {
  Table t;
  t.columns = {"generation", "best_fitness", "mean_fitness"};
  for (const GenerationStats& s : r.history) {
    t.add_row({static_cast<double>(s.generation), s.best_fitness, s.mean_fitness});
  }
  return t;
}

SearchOptions search_options(const DriverOptions& opts) {
  SearchOptions so;
  so.checkpoint_path = opts.checkpoint_path;
  so.resume = opts.resume;
  so.on_generation = opts.on_generation;
  return so;
}

void add_search_summary(RunResult& out) {
  const CircuitMetrics m = metrics(out.search.best.genome);
  out.summary.push_back({"best_fitness", out.search.best.fitness});
  out.summary.push_back({"search_fitness", out.search.search_fitness});
  out.summary.push_back({"passed", out.search.passed ? 1.0 : 0.0});
  out.summary.push_back({"final_stage", out.search.final_stage ? 1.0 : 0.0});
  out.summary.push_back({"generations_run", static_cast<double>(out.search.history.size())});
  out.summary.push_back({"depth", static_cast<double>(m.depth)});
  out.summary.push_back({"one_qubit_gates", static_cast<double>(m.one_qubit_gates)});
  out.summary.push_back({"two_qubit_gates", static_cast<double>(m.two_qubit_gates)});
  out.summary.push_back({"param_count", static_cast<double>(m.param_count)});
  out.best_circuit = out.search.best.genome.serialize();
  out.history = history_table(out.search);
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::kBenchmark: return "benchmark";
    case Experiment::kThermal: return "thermal";
    case Experiment::kDynamics: return "dynamics";
    case Experiment::kVqe: return "vqe";
  }
  return "unknown";
}

Experiment experiment_from_name(const std::string& name) {
  for (Experiment e : {Experiment::kBenchmark, Experiment::kThermal, Experiment::kDynamics,
                       Experiment::kVqe}) {
    if (experiment_name(e) == name) return e;
  }
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const std::size_t a = text.find(':');
    const std::size_t b = text.find(':', a + 1);
    if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
      throw std::invalid_argument("grid must be start:stop:count, got '" + text + "'");
    }
    const double start = parse_double(text.substr(0, a));
    const double stop = parse_double(text.substr(a + 1, b - a - 1));
    const int count = parse_int(text.substr(b + 1));
    if (count < 1) throw std::invalid_argument("grid count must be >= 1");
    if (count == 1) {
      if (start != stop) throw std::invalid_argument("grid with one point needs start == stop");
      return {start};
    }
    std::vector<double> g(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
      g[static_cast<std::size_t>(i)] = start + (stop - start) * i / (count - 1);
    }
    return g;
  }
  std::vector<double> g = parse_list(text);
  if (g.empty()) throw std::invalid_argument("empty grid");
  return g;
}

std::string format_grid(const std::vector<double>& values) { return join(values); }

RunConfig default_config(Experiment kind, PurificationMethod method, int qubits) {
  RunConfig c;
  c.kind = kind;
  switch (kind) {
    case Experiment::kBenchmark:
      c.qubits = qubits > 0 ? qubits : 3;
      c.depth = 9;
      c.pop_size = 8;
      c.generations = 10;
      c.iters = 100;
      c.threshold = 0.01;
      break;
    case Experiment::kThermal:
      c.method = method;
      c.qubits = qubits > 0 ? qubits : 2;
      c.iters = 100;
      c.threshold = 1e-3;
      c.betas = parse_grid("0:10:11");
      if (method == PurificationMethod::kDense) {
        c.depth = 2 * c.qubits;
        c.pop_size = 8;
        c.generations = 16;
      } else {
        c.depth = 29;
        c.pop_size = 16;
        c.generations = 20;
      }
      break;
    case Experiment::kDynamics:
      c.qubits = qubits > 0 ? qubits : 2;
      c.depth = 4;
      c.pop_size = 8;
      c.generations = 16;
      c.iters = 500;
      c.threshold = 1e-3;
      c.times = parse_grid("0.1:10:100");
      break;
    case Experiment::kVqe:
      c.qubits = qubits > 0 ? qubits : 0;  // 0: taken from the Hamiltonians
      c.depth = 15;
      c.pop_size = 8;
      c.generations = 20;
      c.iters = 2000;
      c.threshold = 0.01;
      break;
  }
  return c;
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c) {
  std::vector<std::pair<std::string, std::string>> e = {
      {"experiment", experiment_name(c.kind)},
      {"qubits", std::to_string(c.qubits)},
      {"depth", std::to_string(c.depth)},
      {"pop-size", std::to_string(c.pop_size)},
      {"generations", std::to_string(c.generations)},
      {"iters", std::to_string(c.iters)},
      {"threshold", format_double(c.threshold)},
      {"seed", std::to_string(c.seed)},
      {"mutation-rate", format_double(c.mutation_rate)},
      {"elite-count", std::to_string(c.elite_count)},
      {"final-budget-factor", std::to_string(c.final_budget_factor)},
  };
  switch (c.kind) {
    case Experiment::kBenchmark:
      e.push_back({"train", std::to_string(c.train)});
      e.push_back({"test", std::to_string(c.test)});
      break;
    case Experiment::kThermal:
      e.push_back({"method", method_name(c.method)});
      e.push_back({"beta-grid", format_grid(c.betas)});
      e.push_back({"weighted-fitness", c.weighted_fitness ? "true" : "false"});
      e.push_back({"weights", join({c.weights.w.begin(), c.weights.w.end()})});
      break;
    case Experiment::kDynamics:
      e.push_back({"couplings", join({c.coupling_j, c.coupling_u, c.field_h})});
      e.push_back({"total-time", format_double(c.total_time)});
      e.push_back({"dt", format_double(c.dt)});
      e.push_back({"substeps", std::to_string(c.substeps)});
      e.push_back({"trotter-r", std::to_string(c.trotter_r)});
      e.push_back({"time-grid", format_grid(c.times)});
      e.push_back({"observed-qubit", std::to_string(c.observed_qubit)});
      break;
    case Experiment::kVqe:
      e.push_back({"hamiltonians", c.hamiltonians_path.empty() ? "builtin" : c.hamiltonians_path});
      break;
  }
  return e;
}

void set_config_value(RunConfig& c, const std::string& key, const std::string& value) {
  try {
    if (key == "experiment") {
      if (experiment_from_name(value) != c.kind) {
        throw std::invalid_argument("does not match the selected experiment");
      }
    } else if (key == "qubits") {
      c.qubits = parse_int(value);
    } else if (key == "depth") {
      c.depth = parse_int(value);
    } else if (key == "pop-size") {
      c.pop_size = parse_int(value);
    } else if (key == "generations") {
      c.generations = parse_int(value);
    } else if (key == "iters") {
      c.iters = parse_int(value);
    } else if (key == "threshold") {
      c.threshold = parse_double(value);
    } else if (key == "seed") {
      const long long s = parse_integer(value);
      if (s < 0) throw std::invalid_argument("must be >= 0");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "workers") {
      c.workers = parse_int(value);
    } else if (key == "mutation-rate") {
      c.mutation_rate = parse_double(value);
    } else if (key == "elite-count") {
      c.elite_count = parse_int(value);
    } else if (key == "final-budget-factor") {
      c.final_budget_factor = parse_int(value);
    } else if (key == "train") {
      c.train = parse_int(value);
    } else if (key == "test") {
      c.test = parse_int(value);
    } else if (key == "method") {
      c.method = method_from_name(value);
    } else if (key == "beta-grid") {
      c.betas = parse_grid(value);
    } else if (key == "weighted-fitness") {
      c.weighted_fitness = parse_bool(value);
    } else if (key == "weights") {
      const auto w = parse_list(value);
      if (w.size() != 3) throw std::invalid_argument("expected three comma-separated weights");
      std::copy(w.begin(), w.end(), c.weights.w.begin());
    } else if (key == "couplings") {
      const auto v = parse_list(value);
      if (v.size() != 3) throw std::invalid_argument("expected J,u,h");
      c.coupling_j = v[0];
      c.coupling_u = v[1];
      c.field_h = v[2];
    } else if (key == "total-time") {
      c.total_time = parse_double(value);
    } else if (key == "dt") {
      c.dt = parse_double(value);
    } else if (key == "substeps") {
      c.substeps = parse_int(value);
    } else if (key == "trotter-r") {
      c.trotter_r = parse_int(value);
    } else if (key == "time-grid") {
      c.times = parse_grid(value);
    } else if (key == "observed-qubit") {
      c.observed_qubit = parse_int(value);
    } else if (key == "hamiltonians") {
      c.hamiltonians_path = value == "builtin" ? "" : value;
    } else {
      throw std::invalid_argument("unknown key");
    }
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("config key '" + key + "': " + e.what());
  }
}

GAConfig RunConfig::ga_config() const {
  GAConfig g;
  g.pop_size = pop_size;
  g.generations = generations;
  g.n_iter = iters;
  g.threshold = threshold;
  g.target_depth = depth;
  g.mutation_rate = mutation_rate;
  g.elite_count = elite_count;
  g.final_budget_factor = final_budget_factor;
  g.seed = seed;
  g.workers = workers;
  return g;
}

DynamicsSpec RunConfig::dynamics_spec() const {
  DynamicsSpec s;
  s.num_sites = qubits;
  s.coupling_j = coupling_j;
  s.coupling_u = coupling_u;
  s.field_h = field_h;
  s.total_time = total_time;
  s.dt = dt;
  s.substeps = substeps;
  s.trotter_r = trotter_r;
  return s;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& why) {
    throw std::invalid_argument("config key '" + key + "': " + why);
  };
  if (pop_size < 2 || pop_size % 2 != 0) fail("pop-size", "must be even and >= 2");
  if (generations < 1) fail("generations", "must be >= 1");
  if (iters < 1) fail("iters", "must be >= 1");
  if (!(threshold > 0.0 && threshold < 1.0)) fail("threshold", "must lie in (0, 1)");
  if (depth < 1) fail("depth", "must be >= 1");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) fail("mutation-rate", "must lie in [0, 1]");
  if (elite_count < 0 || elite_count > pop_size || (pop_size - elite_count) % 2 != 0) {
    fail("elite-count", "must be in [0, pop-size] and leave an even remainder");
  }
  if (final_budget_factor < 0) fail("final-budget-factor", "must be >= 0");
  if (workers < 1) fail("workers", "must be >= 1");
  ga_config().validate();
  if (kind != Experiment::kVqe && qubits < 1) fail("qubits", "must be >= 1");
  switch (kind) {
    case Experiment::kBenchmark:
      if (train < 1) fail("train", "must be >= 1");
      if (test < 1) fail("test", "must be >= 1");
      break;
    case Experiment::kThermal:
      if (qubits < 2) fail("qubits", "thermal runs need at least 2 sites");
      if (betas.empty()) fail("beta-grid", "must not be empty");
      for (double b : betas) {
        if (!(b >= 0.0) || !std::isfinite(b)) fail("beta-grid", "values must be finite and >= 0");
        if (method == PurificationMethod::kConventional && weighted_fitness && b > 10.0) {
          fail("beta-grid", "weighted fitness needs beta in [0, 10]");
        }
      }
      for (double w : weights.w) {
        if (!(w >= 0.0) || !std::isfinite(w)) fail("weights", "must be finite and >= 0");
      }
      break;
    case Experiment::kDynamics: {
      if (qubits < 2 || qubits % 2 != 0) fail("qubits", "dynamics needs an even number >= 2");
      if (observed_qubit < 0 || observed_qubit >= qubits) fail("observed-qubit", "out of range");
      try {
        dynamics_spec().validate();
      } catch (const std::invalid_argument& e) {
        fail("couplings", e.what());
      }
      if (times.empty()) fail("time-grid", "must not be empty");
      for (std::size_t i = 0; i < times.size(); ++i) {
        if (i && !(times[i] > times[i - 1])) fail("time-grid", "must be strictly increasing");
        try {
          (void)dynamics_spec().interval_index(times[i]);
        } catch (const std::invalid_argument& e) {
          fail("time-grid", e.what());
        }
      }
      break;
    }
    case Experiment::kVqe:
      if (qubits < 0) fail("qubits", "must be >= 0");
      break;
  }
}

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("Table: row width mismatch");
  rows.push_back(std::move(row));
}

std::vector<double> Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::invalid_argument("Table: no column '" + name + "'");
  const auto k = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[k]);
  return out;
}

std::string Table::to_csv() const {
  std::string s;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) s += ',';
    s += columns[i];
  }
  s += '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) s += ',';
      s += format_fixed12(r[i]);
    }
    s += '\n';
  }
  return s;
}

double RunResult::summary_value(const std::string& key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return v;
  }
  throw std::invalid_argument("summary has no key '" + key + "'");
}

RunResult run_benchmark(const RunConfig& cfg, const DriverOptions& opts) {
  if (cfg.kind != Experiment::kBenchmark) throw std::invalid_argument("run_benchmark: wrong kind");
  cfg.validate();
  const TargetSet set = haar_target_set(cfg.qubits, cfg.train, cfg.test, cfg.seed);
  const Statevector zero(cfg.qubits);
  const CompilationModel model(set.subset(set.train), zero);
  const GAConfig ga = cfg.ga_config();

  RunResult out;
  out.config = cfg;
  out.search = ga_vqa_search(model, ga, search_options(opts));
  add_search_summary(out);
  out.results = out.history;

  const std::vector<Target> test = set.subset(set.test);
  const RiskReport risk = test_risk(out.search.best.genome, test, zero, ga, cfg.iters);
  out.summary.push_back({"train_fidelity", out.search.best.fitness});
  out.summary.push_back({"test_fidelity", risk.mean_fidelity});
  out.summary.push_back({"test_risk", risk.risk});
  return out;
}

Table thermal_theory(int num_sites, const std::vector<double>& betas) {
  Table t;
  t.columns = {"beta", "purity", "trace"};
  for (double b : betas) {
    const GibbsState g = gibbs_state(ThermalSpec{num_sites, b, PurificationMethod::kDense});
    t.add_row({b, purity(g.rho), g.rho.trace().real()});
  }
  return t;
}

RunResult run_thermal(const RunConfig& cfg, const DriverOptions& opts) {
  if (cfg.kind != Experiment::kThermal) throw std::invalid_argument("run_thermal: wrong kind");
  cfg.validate();
  const int n = cfg.qubits;
  const bool dense = cfg.method == PurificationMethod::kDense;

  std::vector<GibbsState> gibbs;
  std::vector<Target> targets;
  for (double b : cfg.betas) {
    gibbs.push_back(gibbs_state(ThermalSpec{n, b, cfg.method}));
    targets.push_back(StateTarget{dense ? dense_purified_state(gibbs.back(), n)
                                        : tfd_state(gibbs.back(), n)});
  }
  const int width = dense ? n : 2 * n;
  const Statevector zero(width);
  CompilationModel model(targets, zero);
  if (!dense && cfg.weighted_fitness) {
    model.set_entry_weights(beta_entry_weights(cfg.betas, cfg.weights));
  }

  RunResult out;
  out.config = cfg;
  out.search = ga_vqa_search(model, cfg.ga_config(), search_options(opts));
  add_search_summary(out);

  out.results.columns = {"beta",          "fidelity",      "purity", "purity_theory",
                         "fidelity_sq_error", "purity_abs_error", "state_overlap"};
  const Individual& best = out.search.best;
  double min_fidelity = 1.0;
  double max_purity_error = 0.0;
  for (std::size_t i = 0; i < cfg.betas.size(); ++i) {
    const Statevector psi = bind_and_run(best.genome, best.params.row(i), zero);
    const Matrix rho_check =
        dense ? dephase_in_basis(psi, gibbs[i].basis) : partial_trace_b(projector(psi), n);
    const double f = uhlmann_fidelity(gibbs[i].rho, rho_check);
    const double p = purity(rho_check);
    const double p_theory = purity(gibbs[i].rho);
    min_fidelity = std::min(min_fidelity, f);
    max_purity_error = std::max(max_purity_error, std::abs(p - p_theory));
    out.results.add_row({cfg.betas[i], f, p, p_theory, (1.0 - f) * (1.0 - f),
                         std::abs(p - p_theory), best.scores[i]});
  }
  out.summary.push_back({"min_fidelity", min_fidelity});
  out.summary.push_back({"max_purity_error", max_purity_error});
  return out;
}

Table dynamics_baselines(const RunConfig& cfg) {
  const DynamicsSpec spec = cfg.dynamics_spec();
  spec.validate();
  const Statevector psi0 = domain_wall_state(cfg.qubits);
  int last = 0;
  for (double t : cfg.times) last = std::max(last, spec.interval_index(t));

  Table t;
  t.columns = {"t", "m_exact", "m_trotter1", "m_trotter2"};
  Statevector exact = psi0;
  Statevector trot1 = psi0;
  Statevector trot2 = psi0;
  std::size_t next = 0;
  auto emit = [&](int interval) {
    while (next < cfg.times.size() && spec.interval_index(cfg.times[next]) == interval) {
      t.add_row({cfg.times[next], magnetization(exact, cfg.observed_qubit),
                 magnetization(trot1, cfg.observed_qubit), magnetization(trot2, cfg.observed_qubit)});
      ++next;
    }
  };
  emit(0);
  for (int i = 0; i < last; ++i) {
    exact = apply_matrix(interval_propagator(spec, i), exact);
    const auto c1 = trotter_interval_circuit(spec, i, 1);
    const auto c2 = trotter_interval_circuit(spec, i, 2);
    apply_gates(trot1, c1);
    apply_gates(trot2, c2);
    emit(i + 1);
  }
  return t;
}

RunResult run_dynamics(const RunConfig& cfg, const DriverOptions& opts) {
  if (cfg.kind != Experiment::kDynamics) throw std::invalid_argument("run_dynamics: wrong kind");
  cfg.validate();
  const DynamicsSpec spec = cfg.dynamics_spec();
  const Statevector psi0 = domain_wall_state(cfg.qubits);
  const Table base = dynamics_baselines(cfg);

  // Exact evolved states are the compilation targets, the domain wall the
  // reference the circuit acts on.
  std::vector<Target> targets;
  {
    Statevector exact = psi0;
    int at = 0;
    for (double t : cfg.times) {
      const int k = spec.interval_index(t);
      for (; at < k; ++at) exact = apply_matrix(interval_propagator(spec, at), exact);
      targets.push_back(StateTarget{exact});
    }
  }
  const CompilationModel model(targets, psi0);

  RunResult out;
  out.config = cfg;
  out.search = ga_vqa_search(model, cfg.ga_config(), search_options(opts));
  add_search_summary(out);

  out.results.columns = {"t",        "m_exact",   "m_trotter1", "m_trotter2", "m_gavqa",
                         "se_trotter1", "se_trotter2", "se_gavqa"};
  double max_se[3] = {0.0, 0.0, 0.0};
  const Individual& best = out.search.best;
  for (std::size_t i = 0; i < cfg.times.size(); ++i) {
    const auto& b = base.row(i);
    const double m_ga =
        magnetization(bind_and_run(best.genome, best.params.row(i), psi0), cfg.observed_qubit);
    const double se1 = (b[2] - b[1]) * (b[2] - b[1]);
    const double se2 = (b[3] - b[1]) * (b[3] - b[1]);
    const double se3 = (m_ga - b[1]) * (m_ga - b[1]);
    max_se[0] = std::max(max_se[0], se1);
    max_se[1] = std::max(max_se[1], se2);
    max_se[2] = std::max(max_se[2], se3);
    out.results.add_row({b[0], b[1], b[2], b[3], m_ga, se1, se2, se3});
  }
  out.summary.push_back({"max_se_trotter1", max_se[0]});
  out.summary.push_back({"max_se_trotter2", max_se[1]});
  out.summary.push_back({"max_se_gavqa", max_se[2]});
  return out;
}

std::vector<PauliSum> builtin_vqe_hamiltonians() {
  return {PauliSum(2, {{1.0, "ZZ"}, {0.5, "XI"}})};
}

double ground_energy(const PauliSum& h) { return eigh(to_matrix(h)).values[0]; }

RunResult run_vqe(const RunConfig& cfg, const DriverOptions& opts) {
  if (cfg.kind != Experiment::kVqe) throw std::invalid_argument("run_vqe: wrong kind");
  cfg.validate();
  std::vector<PauliSum> hs = cfg.hamiltonians_path.empty()
                                 ? builtin_vqe_hamiltonians()
                                 : load_pauli_hamiltonians(cfg.hamiltonians_path);
  const int n = hs.front().num_qubits();
  if (cfg.qubits != 0 && cfg.qubits != n) {
    throw std::invalid_argument("config key 'qubits': Hamiltonians act on " + std::to_string(n) +
                                " qubits");
  }
  const VqeModel model(hs);

  RunResult out;
  out.config = cfg;
  out.config.qubits = n;
  out.search = ga_vqa_search(model, cfg.ga_config(), search_options(opts));
  add_search_summary(out);

  out.results.columns = {"index", "energy", "exact_energy", "gap"};
  double max_gap = 0.0;
  for (std::size_t j = 0; j < hs.size(); ++j) {
    const double e = out.search.best.scores[j];
    const double exact = ground_energy(hs[j]);
    max_gap = std::max(max_gap, e - exact);
    out.results.add_row({static_cast<double>(j), e, exact, e - exact});
  }
  out.summary.push_back({"max_gap", max_gap});
  return out;
}

RunResult run_experiment(const RunConfig& cfg, const DriverOptions& opts) {
  switch (cfg.kind) {
    case Experiment::kBenchmark: return run_benchmark(cfg, opts);
    case Experiment::kThermal: return run_thermal(cfg, opts);
    case Experiment::kDynamics: return run_dynamics(cfg, opts);
    case Experiment::kVqe: return run_vqe(cfg, opts);
  }
  throw std::invalid_argument("run_experiment: unknown kind");
}

void write_outputs(const RunResult& result, const std::filesystem::path& dir,
                   const std::map<std::string, std::string>& manifest_extra) {
  std::filesystem::create_directories(dir);
  std::string summary = "key,value\n";
  for (const auto& [k, v] : result.summary) summary += k + "," + format_fixed12(v) + "\n";

  nlohmann::ordered_json manifest;
  manifest["tool"] = "gavqa";
  manifest["version"] = GAVQA_VERSION;
  manifest["experiment"] = experiment_name(result.config.kind);
  nlohmann::ordered_json config;
  for (const auto& [k, v] : config_entries(result.config)) config[k] = v;
  config["workers"] = std::to_string(result.config.workers);
  manifest["config"] = config;
  manifest["outputs"] = {"results.csv", "history.csv", "summary.csv", "best_circuit.txt"};
  for (const auto& [k, v] : manifest_extra) manifest[k] = v;
  manifest["written_at"] = utc_now();

  write_file_atomic(dir / "results.csv", result.results.to_csv());
  write_file_atomic(dir / "history.csv", result.history.to_csv());
  write_file_atomic(dir / "summary.csv", summary);
  write_file_atomic(dir / "best_circuit.txt", result.best_circuit);
  write_file_atomic(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace gavqa
