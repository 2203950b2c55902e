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

// Parameter optimizers: Adam driven by parameter-shift gradients, and a
// Nelder-Mead simplex for derivative-free objectives.

#ifndef GAVQA_OPT_H_
#define GAVQA_OPT_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gavqa {

struct AdamConfig {
  double alpha = 0.2;
  double beta1 = 0.8;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamConfig config;
  long step = 0;
  std::vector<double> m;
  std::vector<double> v;

  explicit AdamState(std::size_t n, AdamConfig cfg = {}) : config(cfg), m(n, 0.0), v(n, 0.0) {}
};

// One bias-corrected Adam update of params in place.
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grad);

// A scalar objective over a parameter vector. shift_rule[i] says whether
// parameter i enters through a single exp(-i theta/2 P) rotation, which is
// what makes the two-term shift rule exact.
struct Objective {
  std::function<double(std::span<const double>)> evaluate;
  std::size_t param_count = 0;
  std::vector<bool> shift_rule;
};

// [f(theta + pi/2 e_i) - f(theta - pi/2 e_i)] / 2 for every parameter.
std::vector<double> parameter_shift_grad(const Objective& obj, std::span<const double> params);

struct VqaResult {
  std::vector<double> params;  // best seen
  double value = 0.0;          // objective at params
  std::vector<double> trace;   // objective after each step, trace[0] at init
  int steps = 0;
};

// Adam with parameter-shift gradients for at most n_iter steps, stopping as
// soon as the objective is <= threshold.
VqaResult vqa_optimize(const Objective& obj, std::span<const double> init, int n_iter,
                       double threshold, const AdamConfig& config = {});

struct NelderMeadOptions {
  int max_evals = 2000;
  double tol = 1e-10;         // stop once max f - min f over the simplex is below this
  double initial_step = 0.5;  // edge length of the starting simplex
  int restarts = 3;           // rebuild the simplex around the best point after convergence
};

struct NelderMeadResult {
  std::vector<double> params;
  double value = 0.0;
  int evals = 0;
};

// Reflection 1, expansion 2, contraction 0.5, shrink 0.5.
NelderMeadResult nelder_mead(const Objective& obj, std::span<const double> init,
                             const NelderMeadOptions& options = {});

}  // namespace gavqa

#endif  // GAVQA_OPT_H_
