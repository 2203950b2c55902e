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

#include "gavqa/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <set>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "gavqa/io.h"
#include "gavqa/opt.h"

namespace gavqa {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

int default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct FlagSpec {
  const char* flag;  // also the config key
  const char* help;
};

// Flags shared by every experiment subcommand.
constexpr FlagSpec kCommonFlags[] = {
    {"qubits", "number of qubits (sites for thermal and dynamics)"},
    {"depth", "scheduled depth of freshly generated circuits"},
    {"pop-size", "circuits per generation, even"},
    {"generations", "maximum number of generations"},
    {"iters", "inner optimizer budget per target"},
    {"threshold", "stop once 1 - fitness is at or below this"},
    {"seed", "root seed for every random stream"},
    {"mutation-rate", "per-gene replacement probability"},
    {"elite-count", "circuits copied unchanged into the next generation"},
    {"final-budget-factor", "final stage budget as a multiple of iters"},
};

struct ExperimentFlags {
  Experiment kind;
  const char* description;
  std::vector<FlagSpec> extra;
};

const std::vector<ExperimentFlags>& experiment_flags() {
  static const std::vector<ExperimentFlags> kFlags = {
      {Experiment::kBenchmark,
       "compile Haar-random unitaries and report train fidelity and test risk",
       {{"train", "number of training targets"}, {"test", "number of held-out targets"}}},
      {Experiment::kThermal,
       "prepare transverse-field Ising Gibbs states across a beta grid",
       {{"method", "dense (N qubits) or conventional (2N qubits)"},
        {"beta-grid", "start:stop:count or comma list"},
        {"weights", "interval weights for [0,4),[4,7),[7,10] (conventional)"},
        {"weighted-fitness", "rank conventional runs by the weighted fidelity"}}},
      {Experiment::kDynamics,
       "simulate the time-dependent XY-Z chain from a domain wall",
       {{"couplings", "J,u,h"},
        {"total-time", "T in the Hamiltonian schedule"},
        {"dt", "grid spacing"},
        {"substeps", "sub-intervals per grid interval"},
        {"trotter-r", "Trotter number"},
        {"time-grid", "start:stop:count or comma list of grid times"},
        {"observed-qubit", "qubit whose magnetization is reported"}}},
      {Experiment::kVqe,
       "search ansatz structures minimizing a sum of ground energies",
       {{"hamiltonians", "Pauli-sum file, or 'builtin' for Z0Z1 + 0.5 X0"}}},
  };
  return kFlags;
}

std::string default_text(Experiment kind, const std::string& key) {
  if (kind == Experiment::kThermal) {
    if (key == "depth") return "2N dense, 29 conventional";
    if (key == "pop-size") return "8 dense, 16 conventional";
    if (key == "generations") return "16 dense, 20 conventional";
  }
  if (kind == Experiment::kVqe && key == "qubits") return "from the Hamiltonians";
  if (key == "beta-grid") return "0:10:11";
  if (key == "time-grid") return "0.1:10:100";
  for (const auto& [k, v] : config_entries(default_config(kind))) {
    if (k == key) return v;
  }
  return "";
}

// Central difference oracle for the gradient self-check.
std::vector<double> central_difference(const Objective& obj, std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + h;
    const double plus = obj.evaluate(x);
    x[i] = saved - h;
    const double minus = obj.evaluate(x);
    x[i] = saved;
    g[i] = (plus - minus) / (2.0 * h);
  }
  return g;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << x;
  return os.str();
}

}  // namespace

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
    if (!out.emplace(key, value).second) {
      throw std::invalid_argument("config key '" + key + "' given twice");
    }
  }
  return out;
}

RunConfig build_run_config(Experiment kind, const std::map<std::string, std::string>& overrides) {
  // Resolve the keys other defaults depend on before building defaults.
  RunConfig probe = default_config(kind);
  for (const char* key : {"method", "qubits"}) {
    if (auto it = overrides.find(key); it != overrides.end()) set_config_value(probe, key, it->second);
  }
  const bool qubits_given = overrides.count("qubits") > 0;
  RunConfig cfg = default_config(kind, probe.method, qubits_given ? probe.qubits : 0);
  if (kind == Experiment::kVqe && qubits_given) cfg.qubits = probe.qubits;
  std::set<std::string> known{"workers"};
  for (const auto& [key, value] : config_entries(cfg)) known.insert(key);
  for (const auto& [key, value] : overrides) {
    if (!known.count(key)) {
      throw std::invalid_argument("config key '" + key + "' does not apply to " +
                                  experiment_name(kind));
    }
    set_config_value(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

std::vector<VerifyCheck> run_verify_checks(std::uint64_t seed) {
  std::vector<VerifyCheck> checks;

  {
    Rng rng = derive_stream(seed, StreamTag::kTargets, {1});
    double worst = 0.0;
    int instances = 0;
    while (instances < 25) {
      std::uniform_int_distribution<int> nq(1, 4);
      const int n = nq(rng);
      const CircuitGenome g = random_genome(n, 4, rng);
      if (g.param_count() == 0) continue;
      const Target target = UnitaryTarget{haar_random_unitary(1 << n, rng)};
      const Statevector zero(n);
      Objective obj;
      obj.param_count = static_cast<std::size_t>(g.param_count());
      obj.shift_rule.assign(obj.param_count, true);
      obj.evaluate = [&](std::span<const double> th) { return 1.0 - kernel(target, g, th, zero); };
      std::vector<double> theta(obj.param_count);
      std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
      for (double& x : theta) x = angle(rng);
      const auto ps = parameter_shift_grad(obj, theta);
      const auto fd = central_difference(obj, theta, 1e-5);
      for (std::size_t i = 0; i < ps.size(); ++i) worst = std::max(worst, std::abs(ps[i] - fd[i]));
      ++instances;
    }
    checks.push_back({"gradient", worst <= 1e-6,
                      "max |shift - central difference| = " + fmt(worst) + " over 25 circuits"});
  }

  {
    Rng rng = derive_stream(seed, StreamTag::kTargets, {2});
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const int n = 1 + k % 3;
      const TargetSet set = haar_target_set(n, 1, 3, seed + static_cast<std::uint64_t>(k));
      const std::vector<Target> test = set.subset(set.test);
      const CircuitGenome g = random_genome(n, 3, rng);
      ParameterTable params(test.size(), static_cast<std::size_t>(g.param_count()));
      std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
      for (std::size_t j = 0; j < test.size(); ++j) {
        for (double& x : params.row(j)) x = angle(rng);
      }
      const Statevector zero(n);
      const double risk = expected_risk(test, g, params, zero);
      const double loss = multi_target_loss(test, g, params, zero);
      worst = std::max(worst, std::abs(risk - loss));
    }
    checks.push_back({"risk-identity", worst <= 1e-10,
                      "max |risk - mean infidelity| = " + fmt(worst) + " over 20 sets"});
  }

  {
    RunConfig cfg = default_config(Experiment::kDynamics);
    cfg.coupling_u = 1.0;
    cfg.field_h = 0.25;
    cfg.trotter_r = 4;
    cfg.times = parse_grid("0.5:5:10");
    const Table t = dynamics_baselines(cfg);
    double e1 = 0.0;
    double e2 = 0.0;
    for (const auto& row : t.rows) {
      e1 = std::max(e1, std::abs(row[2] - row[1]));
      e2 = std::max(e2, std::abs(row[3] - row[1]));
    }
    checks.push_back({"trotter-order", e2 <= e1,
                      "max magnetization error order 1 = " + fmt(e1) + ", order 2 = " + fmt(e2)});
  }
  return checks;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Genetic search over parameterized circuit structures with per-target training."};
  app.require_subcommand(1);

  struct SubState {
    Experiment kind;
    CLI::App* app = nullptr;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
  };
  std::vector<std::unique_ptr<SubState>> subs;

  std::string config_path;
  std::string out_dir;
  std::string resume_path;
  std::string export_path;
  int workers = default_workers();

  for (const ExperimentFlags& ef : experiment_flags()) {
    auto st = std::make_unique<SubState>();
    st->kind = ef.kind;
    st->app = app.add_subcommand(experiment_name(ef.kind), ef.description);
    std::vector<FlagSpec> flags(std::begin(kCommonFlags), std::end(kCommonFlags));
    flags.insert(flags.end(), ef.extra.begin(), ef.extra.end());
    for (const FlagSpec& f : flags) {
      const std::string key = f.flag;
      std::string help = std::string(f.help) + " [default: " + default_text(ef.kind, key) + "]";
      st->options[key] = st->app->add_option("--" + key, st->values[key], help);
    }
    st->app->add_option("--workers", workers,
                        "worker threads; results do not depend on it [default: machine cores]");
    st->app->add_option("--config", config_path, "flat key = value file, overridden by flags");
    st->app->add_option("--out", out_dir,
                        std::string("output directory [default: $") + kOutRootEnv +
                            "/<experiment>-seed<seed>, or runs/ when unset]");
    st->app->add_option("--resume", resume_path, "continue from a checkpoint file");
    st->app->add_option("--export-circuit", export_path, "also write the best circuit here");
    subs.push_back(std::move(st));
  }

  std::uint64_t verify_seed = 1;
  CLI::App* verify = app.add_subcommand("verify", "run built-in numerical self-checks");
  verify->add_option("--seed", verify_seed, "root seed [default: 1]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (verify->parsed()) {
      bool all = true;
      for (const VerifyCheck& c : run_verify_checks(verify_seed)) {
        out << (c.passed ? "[ok]   " : "[FAIL] ") << c.name << ": " << c.detail << '\n';
        all = all && c.passed;
      }
      out << (all ? "all checks passed" : "some checks failed") << '\n';
      return all ? 0 : 1;
    }

    const SubState* chosen = nullptr;
    for (const auto& st : subs) {
      if (st->app->parsed()) chosen = st.get();
    }
    if (chosen == nullptr) throw std::invalid_argument("no subcommand selected");

    std::map<std::string, std::string> overrides;
    if (!config_path.empty()) overrides = parse_config_text(read_file(config_path));
    if (overrides.count("workers")) {
      try {
        workers = std::stoi(overrides.at("workers"));
      } catch (const std::exception&) {
        throw std::invalid_argument("config key 'workers': expected an integer");
      }
      overrides.erase("workers");
    }
    for (const auto& [key, opt] : chosen->options) {
      if (opt->count() > 0) overrides[key] = chosen->values.at(key);
    }
    RunConfig cfg = build_run_config(chosen->kind, overrides);
    if (workers < 1) throw std::invalid_argument("config key 'workers': must be >= 1");
    cfg.workers = workers;

    std::filesystem::path dir = out_dir;
    if (dir.empty()) {
      const char* root = std::getenv(kOutRootEnv);
      dir = std::filesystem::path(root && *root ? root : "runs") /
            (experiment_name(cfg.kind) + "-seed" + std::to_string(cfg.seed));
    }

    DriverOptions opts;
    opts.checkpoint_path = dir / "checkpoint.txt";
    if (!resume_path.empty()) opts.resume = Checkpoint::parse(read_file(resume_path));
    opts.on_generation = [&out](const GenerationStats& s) {
      out << "generation " << s.generation << " best " << std::setprecision(6) << s.best_fitness
          << " mean " << s.mean_fitness << std::endl;
    };

    std::map<std::string, std::string> extra;
    const auto started = std::chrono::system_clock::now();
    extra["started_unix"] = std::to_string(
        std::chrono::duration_cast<std::chrono::seconds>(started.time_since_epoch()).count());
    if (!resume_path.empty()) extra["resumed_from"] = resume_path;

    const RunResult result = run_experiment(cfg, opts);
    write_outputs(result, dir, extra);
    if (!export_path.empty()) write_file_atomic(export_path, result.best_circuit);

    for (const auto& [k, v] : result.summary) out << k << " = " << std::setprecision(10) << v << '\n';
    out << "wrote " << dir.string() << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gavqa
