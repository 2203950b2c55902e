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

#include "gavqa/opt.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gavqa {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

double checked_eval(const Objective& obj, std::span<const double> x) {
  const double f = obj.evaluate(x);
  if (!std::isfinite(f)) throw std::runtime_error("objective returned a non-finite value");
  return f;
}

}  // namespace

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grad) {
  if (params.size() != grad.size() || params.size() != state.m.size() ||
      state.m.size() != state.v.size()) {
    throw std::invalid_argument("adam_step: length mismatch");
  }
  for (double g : grad) {
    if (!std::isfinite(g)) throw std::invalid_argument("adam_step: non-finite gradient");
  }
  const AdamConfig& c = state.config;
  ++state.step;
  const double k = static_cast<double>(state.step);
  const double bias1 = 1.0 - std::pow(c.beta1, k);
  const double bias2 = 1.0 - std::pow(c.beta2, k);
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = c.beta1 * state.m[i] + (1.0 - c.beta1) * grad[i];
    state.v[i] = c.beta2 * state.v[i] + (1.0 - c.beta2) * grad[i] * grad[i];
    const double m_hat = state.m[i] / bias1;
    const double v_hat = state.v[i] / bias2;
    params[i] -= c.alpha * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
}

std::vector<double> parameter_shift_grad(const Objective& obj, std::span<const double> params) {
  if (params.size() != obj.param_count) {
    throw std::invalid_argument("parameter_shift_grad: expected " +
                                std::to_string(obj.param_count) + " parameters");
  }
  if (obj.shift_rule.size() != obj.param_count) {
    throw std::invalid_argument("parameter_shift_grad: shift-rule flags missing");
  }
  for (std::size_t i = 0; i < obj.param_count; ++i) {
    if (!obj.shift_rule[i]) {
      throw std::invalid_argument("parameter_shift_grad: parameter " + std::to_string(i) +
                                  " is not attached to a single-rotation gate");
    }
  }
  std::vector<double> x(params.begin(), params.end());
  std::vector<double> grad(params.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + kHalfPi;
    const double plus = checked_eval(obj, x);
    x[i] = saved - kHalfPi;
    const double minus = checked_eval(obj, x);
    x[i] = saved;
    grad[i] = 0.5 * (plus - minus);
  }
  return grad;
}

VqaResult vqa_optimize(const Objective& obj, std::span<const double> init, int n_iter,
                       double threshold, const AdamConfig& config) {
  if (n_iter < 1) throw std::invalid_argument("vqa_optimize: n_iter must be >= 1");
  VqaResult r;
  std::vector<double> x(init.begin(), init.end());
  r.params = x;
  r.value = checked_eval(obj, x);
  r.trace.push_back(r.value);
  if (r.value <= threshold || x.empty()) return r;

  AdamState state(x.size(), config);
  for (int k = 0; k < n_iter; ++k) {
    const std::vector<double> g = parameter_shift_grad(obj, x);
    adam_step(state, x, g);
    const double f = checked_eval(obj, x);
    r.trace.push_back(f);
    ++r.steps;
    if (f < r.value) {
      r.value = f;
      r.params = x;
    }
    if (f <= threshold) break;
  }
  return r;
}

NelderMeadResult nelder_mead(const Objective& obj, std::span<const double> init,
                             const NelderMeadOptions& options) {
  const std::size_t n = init.size();
  if (options.max_evals < static_cast<int>(n) + 1) {
    throw std::invalid_argument("nelder_mead: max_evals must be >= dim + 1");
  }
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  // Thrown by eval once the budget is spent, so no step overshoots it.
  struct BudgetSpent {};
  NelderMeadResult r;
  auto eval = [&](const std::vector<double>& x) {
    if (r.evals >= options.max_evals) throw BudgetSpent{};
    ++r.evals;
    const double f = checked_eval(obj, x);
    if (r.params.empty() || f < r.value) {
      r.value = f;
      r.params = x;
    }
    return f;
  };

  std::vector<double> start(init.begin(), init.end());
  eval(start);
  r.params = start;
  if (n == 0) return r;

  std::vector<std::vector<double>> simplex(n + 1);
  std::vector<double> fvals(n + 1);
  auto build = [&](const std::vector<double>& center, double center_f) {
    simplex[0] = center;
    fvals[0] = center_f;
    for (std::size_t i = 0; i < n; ++i) {
      simplex[i + 1] = center;
      simplex[i + 1][i] += options.initial_step;
      fvals[i + 1] = eval(simplex[i + 1]);
    }
  };
  build(start, r.value);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  int restarts_left = options.restarts;
  double value_at_restart = r.value;

  try {
    while (r.evals < options.max_evals) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return fvals[a] < fvals[b];
      });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second_worst = order[n - 1];

      if (fvals[worst] - fvals[best] < options.tol) {
        const bool improved = r.value < value_at_restart - options.tol;
        if (restarts_left > 0 && (improved || restarts_left == options.restarts) &&
            r.evals + static_cast<int>(n) < options.max_evals) {
          --restarts_left;
          value_at_restart = r.value;
          build(r.params, r.value);
          continue;
        }
        break;
      }

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == worst) continue;
        for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex[i][d];
      }
      for (double& c : centroid) c /= static_cast<double>(n);

      for (std::size_t d = 0; d < n; ++d) {
        xr[d] = centroid[d] + kReflect * (centroid[d] - simplex[worst][d]);
      }
      const double fr = eval(xr);

      if (fr < fvals[best]) {
        for (std::size_t d = 0; d < n; ++d) xe[d] = centroid[d] + kExpand * (xr[d] - centroid[d]);
        const double fe = eval(xe);
        if (fe < fr) {
          simplex[worst] = xe;
          fvals[worst] = fe;
        } else {
          simplex[worst] = xr;
          fvals[worst] = fr;
        }
        continue;
      }
      if (fr < fvals[second_worst]) {
        simplex[worst] = xr;
        fvals[worst] = fr;
        continue;
      }

      bool accepted = false;
      if (fr < fvals[worst]) {
        for (std::size_t d = 0; d < n; ++d) xc[d] = centroid[d] + kContract * (xr[d] - centroid[d]);
        const double fc = eval(xc);
        if (fc <= fr) {
          simplex[worst] = xc;
          fvals[worst] = fc;
          accepted = true;
        }
      } else {
        for (std::size_t d = 0; d < n; ++d) {
          xc[d] = centroid[d] + kContract * (simplex[worst][d] - centroid[d]);
        }
        const double fc = eval(xc);
        if (fc < fvals[worst]) {
          simplex[worst] = xc;
          fvals[worst] = fc;
          accepted = true;
        }
      }
      if (!accepted) {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t d = 0; d < n; ++d) {
            simplex[i][d] = simplex[best][d] + kShrink * (simplex[i][d] - simplex[best][d]);
          }
          fvals[i] = eval(simplex[i]);
        }
      }
    }
  } catch (const BudgetSpent&) {
  }
  return r;
}

}  // namespace gavqa
