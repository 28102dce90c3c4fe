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

#include "ftbench/bench.hpp"
#include "ftbench/chimera.hpp"
#include "ftbench/dynamics.hpp"

namespace ftbench::run {

/// Fully resolved invocation, echoed verbatim into the run manifest so every
/// output can be reproduced from the manifest alone.
struct RunConfig {
  // chain
  int length = 6;
  std::vector<double> couplings;  // resolved to length - 1 entries
  std::vector<double> fields;     // resolved to length entries
  // schedule
  std::string schedule_csv;       // empty = built-in linear profile
  std::vector<double> taus;       // microseconds
  // dynamics
  noise::NoiseModel noise;
  int steps = 2000;
  int max_qubits = kDefaultMaxQubits;
  // sampling
  long long shots = 1000000;
  std::uint64_t seed = 1;
  // analysis
  int bootstrap = 1000;
  bench::VerdictThresholds thresholds;
  // io
  std::string out_dir = "ftbench-out";

  model::ChainSpec chain() const;
  model::AnnealSchedule schedule(double tau_us) const;
};

/// Parses "1" (uniform) or "1,-1,..." (per-bond) coupling syntax.
std::vector<double> parse_couplings(const std::string& text, int length);
std::vector<double> parse_fields(const std::string& text, int length);
std::vector<double> parse_tau_list(const std::string& text);

/// Exact per-anneal results from one simulation cell.
struct SimulationResult {
  double tau_us = 0.0;
  tpm::WorkDistribution exact_delta;  // from the final-state distribution
  tpm::WorkDistribution exact_abs;
  double exponential_avg = 0.0;
  double efficacy = 0.0;              // via the spectral-decomposition trace
  double mean_kinks = 0.0;
  double kink_density = 0.0;
  RealVector final_probabilities;     // z-basis diagonal
  bench::ShotArchive shots;
};

/// Anneals the ground state of H(0), reads out the final z distribution, and
/// samples a shot archive with a per-tau seed.
SimulationResult simulate_cell(const RunConfig& config, double tau_us,
                               std::uint64_t sample_seed);

/// Subcommand drivers; each writes manifest.json plus its outputs under
/// config.out_dir and returns the written paths.
std::vector<std::filesystem::path> cmd_simulate(const RunConfig& config);
std::vector<std::filesystem::path> cmd_analyze(
    const RunConfig& config, const std::vector<std::string>& archives);
std::vector<std::filesystem::path> cmd_chimera(const RunConfig& config,
                                               int rows, int cols, int shore,
                                               int chain_length,
                                               int max_restarts);

}  // namespace ftbench::run
