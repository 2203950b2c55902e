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

#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "gavqa/ga.h"
#include "gavqa/io.h"

namespace gavqa {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "gavqa");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("gavqa_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

const std::vector<std::string> kTinyBenchmark = {
    "benchmark", "--qubits", "2",      "--depth", "3",    "--pop-size", "4",
    "--generations", "3", "--iters", "10", "--train", "2", "--test", "1"};

TEST(ConfigText, ParsesFlatPairs) {
  const auto m = parse_config_text("# run\nseed = 7\n  depth=4   # inline\n\n");
  EXPECT_EQ(m.at("seed"), "7");
  EXPECT_EQ(m.at("depth"), "4");
  EXPECT_THROW(parse_config_text("seed = 1\nseed = 2\n"), std::invalid_argument);
  EXPECT_THROW(parse_config_text("seed\n"), std::invalid_argument);
  EXPECT_THROW(parse_config_text(" = 3\n"), std::invalid_argument);
}

TEST(BuildRunConfig, MethodAndQubitsDriveDefaults) {
  const RunConfig c = build_run_config(Experiment::kThermal, {{"method", "dense"}, {"qubits", "4"}});
  EXPECT_EQ(c.depth, 8);
  const RunConfig d = build_run_config(Experiment::kThermal,
                                       {{"method", "conventional"}, {"depth", "12"}});
  EXPECT_EQ(d.depth, 12);
  EXPECT_EQ(d.pop_size, 16);
  EXPECT_THROW(build_run_config(Experiment::kBenchmark, {{"beta-grid", "0:1:2"}}),
               std::invalid_argument);
}

TEST(Help, DocumentsEveryKeyWithDefault) {
  for (Experiment e : {Experiment::kBenchmark, Experiment::kThermal, Experiment::kDynamics,
                       Experiment::kVqe}) {
    const CliRun r = run({experiment_name(e), "--help"});
    EXPECT_EQ(r.code, 0);
    for (const auto& [key, value] : config_entries(default_config(e))) {
      if (key == "experiment") continue;
      EXPECT_NE(r.out.find("--" + key), std::string::npos) << experiment_name(e) << " " << key;
    }
    EXPECT_NE(r.out.find("[default:"), std::string::npos);
  }
  const CliRun d = run({"dynamics", "--help"});
  EXPECT_NE(d.out.find("0.1:10:100"), std::string::npos);
}

TEST(Errors, ReportedWithExitCode) {
  EXPECT_NE(run({"benchmark", "--qubits", "zero"}).code, 0);
  EXPECT_NE(run({"nonsense"}).code, 0);
  const CliRun r = run({"benchmark", "--pop-size", "0", "--out", scratch("err").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("pop-size"), std::string::npos);
  EXPECT_EQ(run({"vqe", "--hamiltonians", "/nonexistent.txt", "--out", scratch("e2").string()}).code,
            1);
}

TEST(Run, WritesOutputsAndExportsCircuit) {
  const fs::path dir = scratch("run");
  const fs::path circuit = scratch("circuit.txt");
  std::vector<std::string> args = kTinyBenchmark;
  args.insert(args.end(), {"--out", dir.string(), "--export-circuit", circuit.string()});
  const CliRun r = run(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("generation 0 best"), std::string::npos);
  EXPECT_NE(r.out.find("test_risk = "), std::string::npos);
  for (const char* f : {"results.csv", "history.csv", "summary.csv", "best_circuit.txt",
                        "manifest.json", "checkpoint.txt"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  EXPECT_EQ(read_file(circuit), read_file(dir / "best_circuit.txt"));
  EXPECT_NO_THROW(CircuitGenome::parse(read_file(circuit)));
  fs::remove_all(dir);
  fs::remove(circuit);
}

TEST(Run, FlagsOverrideConfigFile) {
  const fs::path dir = scratch("precedence");
  const fs::path cfg = scratch("precedence.cfg");
  write_file_atomic(cfg, "seed = 5\ngenerations = 2\nworkers = 2\n");
  std::vector<std::string> args = kTinyBenchmark;
  args.insert(args.end(), {"--config", cfg.string(), "--out", dir.string()});
  ASSERT_EQ(run(args).code, 0);
  const std::string manifest = read_file(dir / "manifest.json");
  EXPECT_NE(manifest.find("\"seed\": \"5\""), std::string::npos);
  EXPECT_NE(manifest.find("\"generations\": \"3\""), std::string::npos);
  EXPECT_NE(manifest.find("\"workers\": \"2\""), std::string::npos);
  fs::remove_all(dir);
  fs::remove(cfg);
}

TEST(Run, DefaultOutputUnderEnvironmentRoot) {
  const fs::path root = scratch("root");
  ::setenv(kOutRootEnv, root.c_str(), 1);
  std::vector<std::string> args = kTinyBenchmark;
  args.insert(args.end(), {"--seed", "9"});
  const CliRun r = run(args);
  ::unsetenv(kOutRootEnv);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(root / "benchmark-seed9" / "results.csv"));
  fs::remove_all(root);
}

TEST(Run, ResumeReproducesUninterruptedResults) {
  const fs::path full = scratch("full");
  const fs::path part = scratch("part");
  const fs::path resumed = scratch("resumed");
  const std::vector<std::string> base = {"benchmark", "--qubits", "2",  "--depth",     "3",
                                         "--pop-size", "4",        "--iters", "10", "--train",
                                         "2",         "--test",   "1",       "--threshold", "1e-9"};

  std::vector<std::string> a = base;
  a.insert(a.end(), {"--generations", "4", "--out", full.string()});
  ASSERT_EQ(run(a).code, 0);

  std::vector<std::string> b = base;
  b.insert(b.end(), {"--generations", "2", "--final-budget-factor", "0", "--out", part.string()});
  ASSERT_EQ(run(b).code, 0);

  std::vector<std::string> c = base;
  c.insert(c.end(), {"--generations", "4", "--resume", (part / "checkpoint.txt").string(), "--out", resumed.string()});
  ASSERT_EQ(run(c).code, 0);
  for (const char* f : {"results.csv", "history.csv", "summary.csv", "best_circuit.txt"}) {
    EXPECT_EQ(read_file(full / f), read_file(resumed / f)) << f;
  }
  fs::remove_all(full);
  fs::remove_all(part);
  fs::remove_all(resumed);
}

TEST(Verify, AllChecksPass) {
  const CliRun r = run({"verify", "--seed", "2"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
}

}  // namespace
}  // namespace gavqa
