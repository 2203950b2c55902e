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

// Command-line front end. Configuration precedence, lowest first: built-in
// per-experiment defaults, the --config file, command-line flags.

#ifndef GAVQA_CLI_H_
#define GAVQA_CLI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gavqa/pipelines.h"

namespace gavqa {

// Environment variable naming the directory under which runs are written
// when --out is not given.
inline constexpr const char* kOutRootEnv = "GAVQA_OUT_ROOT";

// Flat "key = value" lines; '#' starts a comment. Duplicate keys are errors.
std::map<std::string, std::string> parse_config_text(std::string_view text);

// Defaults for `kind`, then every override applied in key order. The
// "method" and "qubits" overrides are applied first since other defaults
// depend on them.
RunConfig build_run_config(Experiment kind, const std::map<std::string, std::string>& overrides);

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Self-checks: parameter-shift gradient against central differences, the
// risk/infidelity identity, and Trotter order-2 beating order-1.
std::vector<VerifyCheck> run_verify_checks(std::uint64_t seed);

// Parses argv, runs the chosen subcommand, and returns the process exit
// code. Diagnostics go to `err`, progress and results to `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gavqa

#endif  // GAVQA_CLI_H_
