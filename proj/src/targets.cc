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

#include "gavqa/targets.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gavqa/random.h"

namespace gavqa {

namespace {

std::string pair_word(int n, int i, int j, char p) {
  std::string w(static_cast<std::size_t>(n), 'I');
  w[static_cast<std::size_t>(i)] = p;
  w[static_cast<std::size_t>(j)] = p;
  return w;
}

std::string single_word(int n, int i, char p) {
  std::string w(static_cast<std::size_t>(n), 'I');
  w[static_cast<std::size_t>(i)] = p;
  return w;
}

// exp(-i coefficient * tau * P) as a rotation gate R_P(2 * coefficient * tau).
GateOp rotation_for_term(const PauliTerm& term, double tau) {
  int support[2] = {-1, -1};
  int count = 0;
  char letter = 'I';
  for (std::size_t k = 0; k < term.word.size(); ++k) {
    if (term.word[k] == 'I') continue;
    if (count == 2 || (count == 1 && term.word[k] != letter)) {
      throw std::invalid_argument("trotter: term '" + term.word + "' has no native rotation gate");
    }
    letter = term.word[k];
    support[count++] = static_cast<int>(k);
  }
  const double theta = 2.0 * term.coefficient * tau;
  if (count == 1) {
    const GateKind kind = letter == 'X' ? GateKind::kRX : letter == 'Y' ? GateKind::kRY : GateKind::kRZ;
    return GateOp{kind, {support[0], -1}, theta};
  }
  if (count == 2) {
    const GateKind kind =
        letter == 'X' ? GateKind::kRXX : letter == 'Y' ? GateKind::kRYY : GateKind::kRZZ;
    return GateOp{kind, {support[0], support[1]}, theta};
  }
  throw std::invalid_argument("trotter: identity term has no rotation gate");
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

TargetSet haar_target_set(int num_qubits, int n_train, int n_test, std::uint64_t seed) {
  if (n_train < 1 || n_test < 1) {
    throw std::invalid_argument("haar_target_set: train and test counts must be >= 1");
  }
  Rng rng = derive_stream(seed, StreamTag::kTargets);
  TargetSet set;
  set.num_qubits = num_qubits;
  const int dim = 1 << num_qubits;
  for (int i = 0; i < n_train + n_test; ++i) {
    set.targets.push_back(UnitaryTarget{haar_random_unitary(dim, rng)});
    (i < n_train ? set.train : set.test).push_back(static_cast<std::size_t>(i));
  }
  set.validate();
  return set;
}

PauliSum tfim_hamiltonian(int num_sites) {
  if (num_sites < 2) throw std::invalid_argument("tfim_hamiltonian: need at least 2 sites");
  std::vector<PauliTerm> terms;
  for (int i = 0; i < num_sites; ++i) {
    const int j = (i + 1) % num_sites;
    terms.push_back({1.0, pair_word(num_sites, std::min(i, j), std::max(i, j), 'Z')});
  }
  for (int i = 0; i < num_sites; ++i) terms.push_back({1.0, single_word(num_sites, i, 'X')});
  return PauliSum(num_sites, std::move(terms));
}

void ThermalSpec::validate() const {
  if (num_sites < 2) throw std::invalid_argument("thermal: num_sites must be >= 2");
  if (!std::isfinite(beta) || beta < 0.0) {
    throw std::invalid_argument("thermal: beta must be finite and >= 0");
  }
}

GibbsState gibbs_state(const ThermalSpec& spec) {
  spec.validate();
  const EigenSystem es = eigh(to_matrix(tfim_hamiltonian(spec.num_sites)));
  GibbsState g;
  g.energies = es.values;
  g.basis = es.vectors;
  const Eigen::Index dim = es.values.size();
  const double e0 = es.values[0];
  Eigen::VectorXd w(dim);
  for (Eigen::Index j = 0; j < dim; ++j) w[j] = std::exp(-spec.beta * (es.values[j] - e0));
  const double shifted_z = w.sum();
  g.populations = w / shifted_z;
  g.partition = shifted_z * std::exp(-spec.beta * e0);
  g.rho = es.vectors * g.populations.cast<Complex>().asDiagonal() * es.vectors.adjoint();
  return g;
}

Statevector tfd_state(const GibbsState& gibbs, int num_sites) {
  const Eigen::Index da = Eigen::Index{1} << num_sites;
  if (gibbs.basis.rows() != da) throw std::invalid_argument("tfd_state: basis dimension mismatch");
  Vector amps = Vector::Zero(da * da);
  for (Eigen::Index j = 0; j < da; ++j) {
    const double w = std::sqrt(gibbs.populations[j]);
    if (w == 0.0) continue;
    const auto v = gibbs.basis.col(j);
    // index = a + da * b, A in the low-order qubits.
    for (Eigen::Index b = 0; b < da; ++b) {
      amps.segment(b * da, da) += w * v[b] * v;
    }
  }
  return Statevector(2 * num_sites, std::move(amps));
}

Statevector tfd_state(const ThermalSpec& spec) {
  if (spec.method != PurificationMethod::kConventional) {
    throw std::invalid_argument("tfd_state: spec method must be conventional");
  }
  return tfd_state(gibbs_state(spec), spec.num_sites);
}

Statevector dense_purified_state(const GibbsState& gibbs, int num_sites) {
  const Eigen::Index da = Eigen::Index{1} << num_sites;
  if (gibbs.basis.rows() != da) {
    throw std::invalid_argument("dense_purified_state: basis dimension mismatch");
  }
  Vector amps = gibbs.basis * gibbs.populations.cwiseSqrt().cast<Complex>();
  return Statevector(num_sites, std::move(amps));
}

Statevector dense_purified_state(const ThermalSpec& spec) {
  if (spec.method != PurificationMethod::kDense) {
    throw std::invalid_argument("dense_purified_state: spec method must be dense");
  }
  return dense_purified_state(gibbs_state(spec), spec.num_sites);
}

Matrix dephase_in_basis(const Statevector& psi, const Matrix& basis) {
  if (basis.rows() != static_cast<Eigen::Index>(psi.dim()) || basis.cols() != basis.rows()) {
    throw std::invalid_argument("dephase_in_basis: dimension mismatch");
  }
  const Eigen::VectorXd weights = (basis.adjoint() * psi.amplitudes()).cwiseAbs2();
  return basis * weights.cast<Complex>().asDiagonal() * basis.adjoint();
}

void DynamicsSpec::validate() const {
  if (num_sites < 2) throw std::invalid_argument("dynamics: num_sites must be >= 2");
  if (!(total_time > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("dynamics: total_time and dt must be positive");
  }
  if (substeps < 1) throw std::invalid_argument("dynamics: substeps must be >= 1");
  if (trotter_r < 1) throw std::invalid_argument("dynamics: trotter_r must be >= 1");
}

int DynamicsSpec::interval_index(double t) const {
  const double ratio = t / dt;
  const double rounded = std::round(ratio);
  if (!std::isfinite(ratio) || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio) ||
      rounded < 0.0 || t > total_time * (1.0 + 1e-12)) {
    throw std::invalid_argument("dynamics: time " + std::to_string(t) +
                                " is not on the grid of spacing " + std::to_string(dt));
  }
  return static_cast<int>(rounded);
}

PauliSum td_hamiltonian(const DynamicsSpec& spec, double t) {
  spec.validate();
  if (t < 0.0 || t > spec.total_time * (1.0 + 1e-12)) {
    throw std::invalid_argument("td_hamiltonian: t outside [0, T]");
  }
  const int n = spec.num_sites;
  const double s = t / spec.total_time;
  std::vector<PauliTerm> terms;
  for (int j = 0; j + 1 < n; ++j) terms.push_back({-0.5 * spec.coupling_j * (1.0 - s), pair_word(n, j, j + 1, 'X')});
  for (int j = 0; j + 1 < n; ++j) terms.push_back({-0.5 * spec.coupling_j * (1.0 + s), pair_word(n, j, j + 1, 'Y')});
  for (int j = 0; j + 1 < n; ++j) terms.push_back({spec.coupling_u, pair_word(n, j, j + 1, 'Z')});
  for (int j = 0; j < n; ++j) terms.push_back({spec.field_h, single_word(n, j, 'X')});
  return PauliSum(n, std::move(terms));
}

Matrix interval_propagator(const DynamicsSpec& spec, int interval) {
  spec.validate();
  const Eigen::Index dim = Eigen::Index{1} << spec.num_sites;
  const double tau = spec.dt / spec.substeps;
  Matrix u = Matrix::Identity(dim, dim);
  for (int k = 0; k < spec.substeps; ++k) {
    const double s = interval * spec.dt + k * tau;
    u = expm_hermitian(to_matrix(td_hamiltonian(spec, s)), Complex(0.0, -tau)) * u;
  }
  return u;
}

Matrix exact_propagator(const DynamicsSpec& spec, double t) {
  spec.validate();
  const int intervals = spec.interval_index(t);
  const Eigen::Index dim = Eigen::Index{1} << spec.num_sites;
  Matrix u = Matrix::Identity(dim, dim);
  for (int i = 0; i < intervals; ++i) u = interval_propagator(spec, i) * u;
  return u;
}

std::vector<GateOp> trotter_interval_circuit(const DynamicsSpec& spec, int interval, int order) {
  spec.validate();
  if (order != 1 && order != 2) throw std::invalid_argument("trotter: order must be 1 or 2");
  const double tau = spec.dt / spec.substeps;
  const int r = spec.trotter_r;
  std::vector<GateOp> ops;
  for (int k = 0; k < spec.substeps; ++k) {
    const PauliSum h = td_hamiltonian(spec, interval * spec.dt + k * tau);
    std::vector<GateOp> forward;
    const double step = order == 1 ? tau / r : tau / (2.0 * r);
    for (const PauliTerm& term : h.terms()) {
      if (term.coefficient == 0.0) continue;
      forward.push_back(rotation_for_term(term, step));
    }
    for (int rep = 0; rep < r; ++rep) {
      if (order == 1) {
        ops.insert(ops.end(), forward.begin(), forward.end());
      } else {
        ops.insert(ops.end(), forward.rbegin(), forward.rend());
        ops.insert(ops.end(), forward.begin(), forward.end());
      }
    }
  }
  return ops;
}

std::vector<GateOp> trotter_circuit(const DynamicsSpec& spec, double t, int order) {
  const int intervals = spec.interval_index(t);
  std::vector<GateOp> ops;
  for (int i = 0; i < intervals; ++i) {
    const auto part = trotter_interval_circuit(spec, i, order);
    ops.insert(ops.end(), part.begin(), part.end());
  }
  return ops;
}

Statevector domain_wall_state(int num_sites) {
  if (num_sites < 2 || num_sites % 2 != 0) {
    throw std::invalid_argument("domain_wall_state: number of sites must be even and >= 2");
  }
  return Statevector::basis(num_sites, (std::uint64_t{1} << (num_sites / 2)) - 1);
}

std::vector<PauliSum> parse_pauli_hamiltonians(std::string_view text) {
  std::vector<PauliSum> out;
  std::vector<PauliTerm> block;
  int num_qubits = -1;
  int line_no = 0;

  auto flush = [&](int at_line) {
    if (block.empty()) {
      throw std::invalid_argument("hamiltonian file: empty block ending at line " +
                                  std::to_string(at_line));
    }
    const int n = static_cast<int>(block.front().word.size());
    if (num_qubits != -1 && n != num_qubits) {
      throw std::invalid_argument("hamiltonian file: inconsistent qubit counts across blocks");
    }
    num_qubits = n;
    out.emplace_back(n, std::move(block));
    block.clear();
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line == "---") {
      flush(line_no);
      continue;
    }
    std::istringstream fields(line);
    std::string word, coef, extra;
    if (!(fields >> word >> coef) || (fields >> extra)) {
      throw std::invalid_argument("hamiltonian file: line " + std::to_string(line_no) +
                                  " must be 'WORD COEFFICIENT'");
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(coef.data(), coef.data() + coef.size(), value);
    if (ec != std::errc() || ptr != coef.data() + coef.size() || !std::isfinite(value)) {
      throw std::invalid_argument("hamiltonian file: line " + std::to_string(line_no) +
                                  " coefficient '" + coef + "' is not a finite real number");
    }
    if (!block.empty() && word.size() != block.front().word.size()) {
      throw std::invalid_argument("hamiltonian file: line " + std::to_string(line_no) +
                                  " word length differs within block");
    }
    for (char c : word) {
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw std::invalid_argument("hamiltonian file: line " + std::to_string(line_no) +
                                    " invalid Pauli word '" + word + "'");
      }
    }
    block.push_back({value, word});
  }
  if (!block.empty()) flush(line_no);
  if (out.empty()) throw std::invalid_argument("hamiltonian file: no Hamiltonians found");
  return out;
}

std::vector<PauliSum> load_pauli_hamiltonians(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Hamiltonian file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pauli_hamiltonians(buf.str());
}

}  // namespace gavqa
