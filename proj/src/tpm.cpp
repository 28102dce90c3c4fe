// Copyright 2026 The ftbench Authors
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

#include "ftbench/tpm.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ftbench::tpm {

namespace {

constexpr double kZeroRowCutoff = 1e-15;

long long integer_eigenvalue(double value) {
  const double rounded = std::nearbyint(value);
  if (std::abs(value - rounded) > 1e-9) {
    throw validation_error(
        "work distribution requires integer spectra; got eigenvalue " +
        std::to_string(value));
  }
  return static_cast<long long>(rounded);
}

}  // namespace

void TransitionMatrix::validate() const {
  if (probabilities.rows() != static_cast<Index>(initial_values.size()) ||
      probabilities.cols() != static_cast<Index>(final_values.size())) {
    throw validation_error("transition matrix shape does not match labels");
  }
  CompensatedSum total;
  for (Index m = 0; m < probabilities.rows(); ++m) {
    for (Index n = 0; n < probabilities.cols(); ++n) {
      const double p = probabilities(m, n);
      if (!(p >= -1e-12)) {
        throw validation_error("transition probability " + std::to_string(p) +
                               " below tolerance");
      }
      total.add(p);
    }
  }
  if (std::abs(total.value() - 1.0) > 1e-9) {
    throw validation_error("transition probabilities sum to " +
                           std::to_string(total.value()) + ", expected 1");
  }
}

void WorkDistribution::add(long long key, double probability) {
  table_[key] += probability;
}

double WorkDistribution::probability(long long key) const {
  const auto it = table_.find(key);
  return it == table_.end() ? 0.0 : it->second;
}

double WorkDistribution::total() const {
  CompensatedSum sum;
  for (const auto& [key, p] : table_) sum.add(p);
  return sum.value();
}

double WorkDistribution::total_variation(const WorkDistribution& other) const {
  CompensatedSum sum;
  auto a = table_.begin();
  auto b = other.table_.begin();
  while (a != table_.end() || b != other.table_.end()) {
    if (b == other.table_.end() || (a != table_.end() && a->first < b->first)) {
      sum.add(std::abs(a->second));
      ++a;
    } else if (a == table_.end() || b->first < a->first) {
      sum.add(std::abs(b->second));
      ++b;
    } else {
      sum.add(std::abs(a->second - b->second));
      ++a;
      ++b;
    }
  }
  return 0.5 * sum.value();
}

Matrix post_measurement_state(const Matrix& rho,
                              const model::Observable& omega_initial) {
  if (rho.rows() != omega_initial.dim() || rho.cols() != omega_initial.dim()) {
    throw validation_error("post_measurement_state: dimension mismatch");
  }
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& pair : omega_initial.pairs()) {
    out += pair.projector * rho * pair.projector;
  }
  return out;
}

TransitionMatrix transition_matrix(const Matrix& rho,
                                   const model::Observable& omega_initial,
                                   const model::Observable& omega_final,
                                   const dynamics::QuantumMap& map) {
  const Index dim = omega_initial.dim();
  if (rho.rows() != dim || rho.cols() != dim || omega_final.dim() != dim ||
      map.dim() != dim) {
    throw validation_error("transition_matrix: dimension mismatch");
  }

  TransitionMatrix result;
  result.initial_values = omega_initial.eigenvalues();
  result.final_values = omega_final.eigenvalues();
  const auto rows = static_cast<Index>(result.initial_values.size());
  const auto cols = static_cast<Index>(result.final_values.size());
  result.probabilities = RealMatrix::Zero(rows, cols);

  for (Index m = 0; m < rows; ++m) {
    const auto& projector = omega_initial.pairs()[static_cast<std::size_t>(m)].projector;
    const double weight = (projector * rho).trace().real();
    if (weight <= kZeroRowCutoff) continue;  // unmeasured outcome, exact zero row
    const Matrix projected = projector * rho * projector;
    const Matrix evolved = map.apply(projected);
    for (Index n = 0; n < cols; ++n) {
      const auto& final_projector =
          omega_final.pairs()[static_cast<std::size_t>(n)].projector;
      result.probabilities(m, n) =
          (final_projector * evolved).trace().real();
    }
  }
  return result;
}

WorkDistribution work_distribution(const TransitionMatrix& transitions) {
  std::vector<long long> initial_keys, final_keys;
  initial_keys.reserve(transitions.initial_values.size());
  final_keys.reserve(transitions.final_values.size());
  for (double v : transitions.initial_values) {
    initial_keys.push_back(integer_eigenvalue(v));
  }
  for (double v : transitions.final_values) {
    final_keys.push_back(integer_eigenvalue(v));
  }

  std::map<long long, CompensatedSum> sums;
  for (std::size_t m = 0; m < initial_keys.size(); ++m) {
    for (std::size_t n = 0; n < final_keys.size(); ++n) {
      const double p = transitions.probabilities(static_cast<Index>(m),
                                                 static_cast<Index>(n));
      if (p == 0.0) continue;
      sums[final_keys[n] - initial_keys[m]].add(p);
    }
  }
  WorkDistribution distribution;
  for (const auto& [key, sum] : sums) distribution.add(key, sum.value());
  return distribution;
}

double exponential_average(const WorkDistribution& distribution) {
  if (distribution.empty()) {
    throw validation_error("exponential_average: empty distribution");
  }
  // Largest exponent in exp(-key); keys are sorted so it is the first one.
  const double peak = -static_cast<double>(
      distribution.probabilities().begin()->first);
  CompensatedSum sum;
  for (const auto& [key, p] : distribution.probabilities()) {
    sum.add(std::exp(-static_cast<double>(key) - peak) * p);
  }
  if (peak > 700.0) {
    // exp(peak) alone would overflow; recombine in log space.
    return std::exp(peak + std::log(sum.value()));
  }
  return std::exp(peak) * sum.value();
}

double efficacy(const Matrix& rho, const model::Observable& omega_initial,
                const model::Observable& omega_final,
                const dynamics::QuantumMap& map) {
  const Index dim = omega_initial.dim();
  if (rho.rows() != dim || rho.cols() != dim || omega_final.dim() != dim ||
      map.dim() != dim) {
    throw validation_error("efficacy: dimension mismatch");
  }
  // M(rho) exp(W_i) = sum_m exp(w_m) P_m rho P_m by projector orthogonality.
  Matrix weighted = Matrix::Zero(dim, dim);
  for (const auto& pair : omega_initial.pairs()) {
    weighted += std::exp(pair.value) * (pair.projector * rho * pair.projector);
  }
  const Matrix evolved = map.apply(weighted);
  CompensatedSum gamma;
  for (const auto& pair : omega_final.pairs()) {
    gamma.add(std::exp(-pair.value) *
              (pair.projector * evolved).trace().real());
  }
  return gamma.value();
}

WorkDistribution ideal_distribution(int length) {
  if (length < 2) throw validation_error("chain length must be at least 2");
  WorkDistribution distribution;
  distribution.add(length - 1, 1.0);
  distribution.meta.length = length;
  return distribution;
}

bench::ShotArchive sample_shots(const RealVector& probabilities,
                                const model::ChainSpec& spec, long long shots,
                                std::uint64_t seed) {
  const Index dim = Index(1) << spec.length();
  if (probabilities.size() != dim) {
    throw validation_error("sample_shots: probability vector has size " +
                           std::to_string(probabilities.size()) +
                           ", expected " + std::to_string(dim));
  }
  if (shots < 1) throw validation_error("sample_shots: need at least one shot");

  std::vector<double> weights(probabilities.data(),
                              probabilities.data() + probabilities.size());
  for (double& w : weights) w = std::max(w, 0.0);

  std::mt19937_64 rng(seed);
  const auto counts = multinomial_counts(weights, shots, rng);

  bench::ShotArchive archive;
  archive.meta.length = spec.length();
  archive.meta.couplings = spec.couplings();
  archive.meta.uniform_coupling = spec.uniform_coupling();
  archive.meta.machine = "ftbench-simulator";
  for (Index z = 0; z < dim; ++z) {
    if (counts[static_cast<std::size_t>(z)] == 0) continue;
    bench::ShotSample sample;
    sample.count = counts[static_cast<std::size_t>(z)];
    sample.spins.reserve(static_cast<std::size_t>(spec.length()));
    for (int site = 0; site < spec.length(); ++site) {
      sample.spins.push_back(
          model::spin_of(static_cast<std::uint64_t>(z), site));
    }
    archive.samples.push_back(std::move(sample));
  }
  return archive;
}

std::map<long long, long long> sample_work_outcomes(
    const WorkDistribution& distribution, long long shots,
    std::uint64_t seed) {
  if (distribution.empty()) {
    throw validation_error("sample_work_outcomes: empty distribution");
  }
  if (shots < 1) {
    throw validation_error("sample_work_outcomes: need at least one shot");
  }
  std::vector<long long> keys;
  std::vector<double> weights;
  for (const auto& [key, p] : distribution.probabilities()) {
    keys.push_back(key);
    weights.push_back(std::max(p, 0.0));
  }
  std::mt19937_64 rng(seed);
  const auto counts = multinomial_counts(weights, shots, rng);
  std::map<long long, long long> out;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (counts[i] > 0) out[keys[i]] = counts[i];
  }
  return out;
}

void write_distribution_csv(const WorkDistribution& distribution,
                            const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write distribution " + path.string());
  out << "delta_omega,probability\n";
  char buffer[64];
  for (const auto& [key, p] : distribution.probabilities()) {
    std::snprintf(buffer, sizeof(buffer), "%lld,%.17g\n", key, p);
    out << buffer;
  }
  if (!out) throw io_error("failed writing distribution " + path.string());
}

WorkDistribution read_distribution_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open distribution " + path.string());
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("delta_omega,probability", 0) != 0) {
    throw validation_error(path.string() +
                           ":1: expected header 'delta_omega,probability'");
  }
  WorkDistribution distribution;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string key_text, p_text;
    if (!std::getline(cells, key_text, ',') || !std::getline(cells, p_text)) {
      throw validation_error(path.string() + ":" + std::to_string(lineno) +
                             ": expected 'key,probability'");
    }
    try {
      distribution.add(std::stoll(key_text), std::stod(p_text));
    } catch (const std::exception&) {
      throw validation_error(path.string() + ":" + std::to_string(lineno) +
                             ": bad row");
    }
  }
  return distribution;
}

}  // namespace ftbench::tpm
