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

#pragma once

#include <map>

#include "ftbench/archive.hpp"
#include "ftbench/dynamics.hpp"
#include "ftbench/model.hpp"

namespace ftbench::tpm {

/// Joint outcome probabilities of the two-point measurement: row m is the
/// first outcome (initial observable), column n the second.
struct TransitionMatrix {
  std::vector<double> initial_values;
  std::vector<double> final_values;
  RealMatrix probabilities;

  /// Entries >= -1e-12, total within 1e-9 of one.
  void validate() const;
};

/// Probability distribution on integer outcome differences.  Both protocol
/// observables have integer spectra, so keys are exact and no floating-point
/// binning happens anywhere downstream.
class WorkDistribution {
 public:
  struct Meta {
    int length = 0;
    double tau_us = 0.0;
    std::string noise = "none";
  };

  WorkDistribution() = default;

  void add(long long key, double probability);
  const std::map<long long, double>& probabilities() const { return table_; }
  double probability(long long key) const;

  double total() const;
  bool empty() const { return table_.empty(); }

  /// Half the L1 distance between the two key-indexed histograms.
  double total_variation(const WorkDistribution& other) const;

  Meta meta;

 private:
  std::map<long long, double> table_;
};

/// Post-measurement state sum_m P_m rho P_m of the first measurement.
Matrix post_measurement_state(const Matrix& rho,
                              const model::Observable& omega_initial);

/// p[m][n] = tr(P_n^f E(P_m^i rho P_m^i)).  Rows whose first-measurement
/// probability vanishes are exactly zero and skip the map application.
TransitionMatrix transition_matrix(const Matrix& rho,
                                   const model::Observable& omega_initial,
                                   const model::Observable& omega_final,
                                   const dynamics::QuantumMap& map);

/// Aggregates transition probabilities on integer keys w_n - w_m.
WorkDistribution work_distribution(const TransitionMatrix& transitions);

/// sum over keys of exp(-key) * p, compensated and guarded against overflow
/// by factoring out the largest exponent.
double exponential_average(const WorkDistribution& distribution);

/// Quantum efficacy tr(exp(-W_f) E(M(rho) exp(W_i))), evaluated through the
/// spectral decompositions; the exponentials are projector-weighted sums,
/// never matrix exponentials.
double efficacy(const Matrix& rho, const model::Observable& omega_initial,
                const model::Observable& omega_final,
                const dynamics::QuantumMap& map);

/// Point mass at |w| = L - 1: the outcome distribution of any process that
/// maps a classical ground state onto a classical ground state.
WorkDistribution ideal_distribution(int length);

/// N z-basis bitstring draws from a final-state probability vector
/// (the diagonal of the final density matrix), deterministic per seed.
bench::ShotArchive sample_shots(const RealVector& probabilities,
                                const model::ChainSpec& spec, long long shots,
                                std::uint64_t seed);

/// N categorical draws from an integer-keyed distribution.
std::map<long long, long long> sample_work_outcomes(
    const WorkDistribution& distribution, long long shots, std::uint64_t seed);

/// Writes `delta_omega,probability` rows sorted by key.
void write_distribution_csv(const WorkDistribution& distribution,
                            const std::filesystem::path& path);
WorkDistribution read_distribution_csv(const std::filesystem::path& path);

}  // namespace ftbench::tpm
