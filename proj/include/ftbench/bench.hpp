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

#include <optional>
#include <span>

#include "ftbench/archive.hpp"
#include "ftbench/tpm.hpp"

namespace ftbench::bench {

// ----------------------------------------------------------------------------
// Per-shot readout
// ----------------------------------------------------------------------------

struct FinalEnergy {
  long long omega_f = 0;  // bond sum, coupling-independent
  int kinks = 0;          // bonds violating sign(J_n) s_n s_{n+1} = +1
};

FinalEnergy final_energy(std::span<const int> spins,
                         const model::ChainSpec& spec);

// ----------------------------------------------------------------------------
// Empirical distributions
// ----------------------------------------------------------------------------

/// Frequencies from an archive.  The first measurement outcome is taken as
/// certain (value L - 1), so delta keys are the sign-adjusted bond sum minus
/// L - 1, i.e. -2 * kinks; abs keys are |omega_f| for the ideal-outcome
/// comparison.
struct EmpiricalDistributions {
  tpm::WorkDistribution delta_omega;
  tpm::WorkDistribution abs_omega;
  long long shots = 0;
};

EmpiricalDistributions empirical_distribution(const ShotArchive& archive,
                                              const model::ChainSpec& spec);

// ----------------------------------------------------------------------------
// Fluctuation estimator
// ----------------------------------------------------------------------------

struct FtEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int bootstrap = 0;
  double level = 0.95;
};

/// Point estimate sum exp(-delta) * frequency plus a seeded percentile
/// bootstrap over the shots.
FtEstimate ft_estimate(const ShotArchive& archive,
                       const model::ChainSpec& spec, int bootstrap = 1000,
                       std::uint64_t seed = 1);

// ----------------------------------------------------------------------------
// Adiabatic threshold and kinks
// ----------------------------------------------------------------------------

struct AdiabaticThreshold {
  double tau_ad_us = 0.0;
  double crossing_s = 0.0;          // normalized time with g = Delta
  double delta_at_crossing_ghz = 0.0;
};

/// tau_ad = L^2 / Delta(t_c) expressed in microseconds; the crossing is
/// located by bisection on g(s) - Delta(s).
AdiabaticThreshold adiabatic_threshold(int length,
                                       const model::AnnealSchedule& schedule);

struct KinkStatistics {
  double mean = 0.0;
  double density = 0.0;         // mean / (L - 1)
  double stderr_mean = 0.0;
  double stderr_density = 0.0;
};

KinkStatistics kink_statistics(const ShotArchive& archive,
                               const model::ChainSpec& spec);

/// Flips spins on every second site and negates the couplings; preserves
/// kink counts and the |omega_f| marginal exactly.
ShotArchive gauge_flipped(const ShotArchive& archive);

// ----------------------------------------------------------------------------
// Verdicts
// ----------------------------------------------------------------------------

/// Pass/fail bars, echoed verbatim into every report.
struct VerdictThresholds {
  double unital_eps = 0.05;        // distance of 1 from the bootstrap CI
  double adiabatic_eps = 0.01;     // TV against the ideal point mass
  double tau_noise_multiplier = 3.0;  // times the pairwise sampling floor
  double symmetry_eps = 0.02;      // TV between +J and -J |omega| marginals
};

struct BenchmarkReport {
  ArchiveMeta meta;
  long long shots = 0;
  tpm::WorkDistribution delta_omega;
  tpm::WorkDistribution abs_omega;
  FtEstimate ft;
  double tv_to_ideal = 0.0;
  KinkStatistics kinks;
  AdiabaticThreshold threshold;
  VerdictThresholds thresholds;
  bool unital = false;
  bool adiabatic = false;
};

BenchmarkReport analyze_archive(const ShotArchive& archive,
                                const model::AnnealSchedule& schedule_profile,
                                const VerdictThresholds& thresholds = {},
                                int bootstrap = 1000, std::uint64_t seed = 1);

/// Verdicts that need several archives: tau dependence across anneal-time
/// groups and the ferro/antiferro symmetry check.
struct CrossVerdicts {
  int tau_groups = 0;
  std::optional<bool> tau_dependent;  // unset with fewer than two groups
  double max_pairwise_tv = 0.0;
  double tau_threshold_at_max = 0.0;  // multiplier * floor for the max pair
  std::optional<bool> symmetric;      // unset without both coupling signs
  double symmetry_tv = 0.0;
};

CrossVerdicts verdicts(const std::vector<BenchmarkReport>& reports,
                       const VerdictThresholds& thresholds = {});

/// Expected total-variation scale between two same-law empirical histograms
/// with the given sample counts over `classes` outcome classes.
double pairwise_noise_floor(long long shots_a, long long shots_b,
                            std::size_t classes);

// ----------------------------------------------------------------------------
// Report output
// ----------------------------------------------------------------------------

std::string report_to_json(const BenchmarkReport& report);
std::string reports_to_json(const std::vector<BenchmarkReport>& reports,
                            const CrossVerdicts& cross);

/// `<stem>_delta_omega.csv` and `<stem>_abs_omega_renorm.csv`
/// (keys divided by L - 1) under `directory`.
void write_histogram_csvs(const BenchmarkReport& report,
                          const std::filesystem::path& directory,
                          const std::string& stem);

}  // namespace ftbench::bench
