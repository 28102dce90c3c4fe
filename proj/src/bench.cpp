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

#include "ftbench/bench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

namespace ftbench::bench {

using nlohmann::json;

// ----------------------------------------------------------------------------
// Per-shot readout
// ----------------------------------------------------------------------------

FinalEnergy final_energy(std::span<const int> spins,
                         const model::ChainSpec& spec) {
  if (spins.size() != static_cast<std::size_t>(spec.length())) {
    throw validation_error("final_energy: expected " +
                           std::to_string(spec.length()) + " spins, got " +
                           std::to_string(spins.size()));
  }
  FinalEnergy out;
  for (int n = 0; n + 1 < spec.length(); ++n) {
    const int bond = spins[static_cast<std::size_t>(n)] *
                     spins[static_cast<std::size_t>(n + 1)];
    out.omega_f += bond;
    if (spec.coupling_sign(n) * bond < 0) ++out.kinks;
  }
  return out;
}

// ----------------------------------------------------------------------------
// Empirical distributions
// ----------------------------------------------------------------------------

EmpiricalDistributions empirical_distribution(const ShotArchive& archive,
                                              const model::ChainSpec& spec) {
  archive.validate();
  const long long shots = archive.total_shots();
  std::map<long long, long long> delta_counts;
  std::map<long long, long long> abs_counts;
  for (const auto& sample : archive.samples) {
    const FinalEnergy energy = final_energy(sample.spins, spec);
    delta_counts[-2LL * energy.kinks] += sample.count;
    abs_counts[std::llabs(energy.omega_f)] += sample.count;
  }

  EmpiricalDistributions out;
  out.shots = shots;
  for (const auto& [key, count] : delta_counts) {
    out.delta_omega.add(key, static_cast<double>(count) / shots);
  }
  for (const auto& [key, count] : abs_counts) {
    out.abs_omega.add(key, static_cast<double>(count) / shots);
  }
  out.delta_omega.meta.length = spec.length();
  out.delta_omega.meta.tau_us = archive.meta.tau_us;
  out.abs_omega.meta = out.delta_omega.meta;
  return out;
}

// ----------------------------------------------------------------------------
// Fluctuation estimator
// ----------------------------------------------------------------------------

namespace {

double percentile(std::vector<double> sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

double weighted_exponential_average(const std::vector<long long>& keys,
                                    const std::vector<long long>& counts,
                                    long long shots) {
  tpm::WorkDistribution distribution;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (counts[i] > 0) {
      distribution.add(keys[i], static_cast<double>(counts[i]) / shots);
    }
  }
  return tpm::exponential_average(distribution);
}

}  // namespace

FtEstimate ft_estimate(const ShotArchive& archive,
                       const model::ChainSpec& spec, int bootstrap,
                       std::uint64_t seed) {
  if (bootstrap < 1) throw validation_error("bootstrap count must be >= 1");
  const EmpiricalDistributions empirical =
      empirical_distribution(archive, spec);

  FtEstimate out;
  out.bootstrap = bootstrap;
  out.estimate = tpm::exponential_average(empirical.delta_omega);

  std::vector<long long> keys;
  std::vector<double> weights;
  for (const auto& [key, p] : empirical.delta_omega.probabilities()) {
    keys.push_back(key);
    weights.push_back(p);
  }

  std::mt19937_64 rng(seed);
  std::vector<double> estimates;
  estimates.reserve(static_cast<std::size_t>(bootstrap));
  for (int b = 0; b < bootstrap; ++b) {
    const auto counts = multinomial_counts(weights, empirical.shots, rng);
    estimates.push_back(
        weighted_exponential_average(keys, counts, empirical.shots));
  }
  std::sort(estimates.begin(), estimates.end());
  const double alpha = (1.0 - out.level) / 2.0;
  out.ci_low = percentile(estimates, alpha);
  out.ci_high = percentile(std::move(estimates), 1.0 - alpha);
  return out;
}

// ----------------------------------------------------------------------------
// Adiabatic threshold and kinks
// ----------------------------------------------------------------------------

AdiabaticThreshold adiabatic_threshold(int length,
                                       const model::AnnealSchedule& schedule) {
  if (length < 2) throw validation_error("chain length must be at least 2");
  const auto gap = [&](double s) { return schedule.g(s) - schedule.delta(s); };
  double lo = 0.0, hi = 1.0;
  // Schedule invariants give gap(0) > 0 > gap(1).
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double value = gap(mid);
    if (value == 0.0) {
      lo = hi = mid;
      break;
    }
    (value > 0.0 ? lo : hi) = mid;
  }
  AdiabaticThreshold out;
  out.crossing_s = 0.5 * (lo + hi);
  out.delta_at_crossing_ghz = schedule.delta(out.crossing_s);
  // L^2 / Delta with Delta in GHz gives nanoseconds.
  out.tau_ad_us = static_cast<double>(length) * static_cast<double>(length) /
                  out.delta_at_crossing_ghz / 1000.0;
  return out;
}

KinkStatistics kink_statistics(const ShotArchive& archive,
                               const model::ChainSpec& spec) {
  archive.validate();
  const long long shots = archive.total_shots();
  CompensatedSum sum, sum_sq;
  for (const auto& sample : archive.samples) {
    const auto kinks =
        static_cast<double>(final_energy(sample.spins, spec).kinks);
    sum.add(kinks * static_cast<double>(sample.count));
    sum_sq.add(kinks * kinks * static_cast<double>(sample.count));
  }
  KinkStatistics out;
  const auto n = static_cast<double>(shots);
  out.mean = sum.value() / n;
  out.density = out.mean / (spec.length() - 1);
  if (shots > 1) {
    const double variance =
        std::max(0.0, (sum_sq.value() - n * out.mean * out.mean) / (n - 1.0));
    out.stderr_mean = std::sqrt(variance / n);
    out.stderr_density = out.stderr_mean / (spec.length() - 1);
  }
  return out;
}

ShotArchive gauge_flipped(const ShotArchive& archive) {
  ShotArchive out = archive;
  for (auto& coupling : out.meta.couplings) coupling = -coupling;
  for (auto& sample : out.samples) {
    for (std::size_t site = 1; site < sample.spins.size(); site += 2) {
      sample.spins[site] = -sample.spins[site];
    }
  }
  return out;
}

// ----------------------------------------------------------------------------
// Verdicts
// ----------------------------------------------------------------------------

double pairwise_noise_floor(long long shots_a, long long shots_b,
                            std::size_t classes) {
  // Expected TV between two empirical histograms of the same law: each class
  // frequency gap has standard deviation <= sqrt(p (1/Na + 1/Nb)) / ~2, and
  // summing |gaps| over K classes is bounded through Cauchy-Schwarz.
  const double inv = 1.0 / static_cast<double>(shots_a) +
                     1.0 / static_cast<double>(shots_b);
  return 0.5 * std::sqrt(2.0 / M_PI) *
         std::sqrt(static_cast<double>(classes)) * std::sqrt(inv);
}

BenchmarkReport analyze_archive(const ShotArchive& archive,
                                const model::AnnealSchedule& schedule_profile,
                                const VerdictThresholds& thresholds,
                                int bootstrap, std::uint64_t seed) {
  const model::ChainSpec spec = archive.meta.chain();
  const EmpiricalDistributions empirical =
      empirical_distribution(archive, spec);

  BenchmarkReport report;
  report.meta = archive.meta;
  report.shots = empirical.shots;
  report.delta_omega = empirical.delta_omega;
  report.abs_omega = empirical.abs_omega;
  report.ft = ft_estimate(archive, spec, bootstrap, seed);
  report.tv_to_ideal =
      empirical.abs_omega.total_variation(tpm::ideal_distribution(spec.length()));
  report.kinks = kink_statistics(archive, spec);
  report.threshold = adiabatic_threshold(spec.length(), schedule_profile);
  report.thresholds = thresholds;

  // The bootstrap CI widens the acceptance band: pass when 1 lies within
  // unital_eps of the interval.
  double distance = 0.0;
  if (1.0 < report.ft.ci_low) distance = report.ft.ci_low - 1.0;
  if (1.0 > report.ft.ci_high) distance = 1.0 - report.ft.ci_high;
  report.unital = distance <= thresholds.unital_eps;
  report.adiabatic = report.tv_to_ideal <= thresholds.adiabatic_eps;
  return report;
}

namespace {

tpm::WorkDistribution pooled_distribution(
    const std::vector<const BenchmarkReport*>& group,
    const tpm::WorkDistribution BenchmarkReport::*member) {
  long long total = 0;
  for (const auto* r : group) total += r->shots;
  tpm::WorkDistribution pooled;
  for (const auto* r : group) {
    const double weight = static_cast<double>(r->shots) / total;
    for (const auto& [key, p] : (r->*member).probabilities()) {
      pooled.add(key, weight * p);
    }
  }
  return pooled;
}

long long pooled_shots(const std::vector<const BenchmarkReport*>& group) {
  long long total = 0;
  for (const auto* r : group) total += r->shots;
  return total;
}

int coupling_sign_of(const ArchiveMeta& meta) {
  bool any_positive = false, any_negative = false;
  for (double j : meta.couplings) {
    if (j > 0) any_positive = true;
    if (j < 0) any_negative = true;
  }
  if (any_positive && !any_negative) return 1;
  if (any_negative && !any_positive) return -1;
  return 0;  // mixed signs: excluded from the symmetry comparison
}

}  // namespace

CrossVerdicts verdicts(const std::vector<BenchmarkReport>& reports,
                       const VerdictThresholds& thresholds) {
  if (reports.empty()) {
    throw validation_error("verdicts: need at least one report");
  }

  CrossVerdicts cross;

  // Group by anneal time, pooling same-tau archives.
  std::map<double, std::vector<const BenchmarkReport*>> by_tau;
  for (const auto& report : reports) {
    by_tau[report.meta.tau_us].push_back(&report);
  }
  cross.tau_groups = static_cast<int>(by_tau.size());
  if (by_tau.size() >= 2) {
    std::vector<tpm::WorkDistribution> dists;
    std::vector<long long> shots;
    for (const auto& [tau, group] : by_tau) {
      dists.push_back(pooled_distribution(group, &BenchmarkReport::delta_omega));
      shots.push_back(pooled_shots(group));
    }
    bool dependent = false;
    double max_excess = -1.0;
    for (std::size_t a = 0; a < dists.size(); ++a) {
      for (std::size_t b = a + 1; b < dists.size(); ++b) {
        std::set<long long> support;
        for (const auto& [key, p] : dists[a].probabilities()) support.insert(key);
        for (const auto& [key, p] : dists[b].probabilities()) support.insert(key);
        const double tv = dists[a].total_variation(dists[b]);
        const double floor = pairwise_noise_floor(shots[a], shots[b], support.size());
        const double threshold = thresholds.tau_noise_multiplier * floor;
        if (tv > threshold) dependent = true;
        if (tv - threshold > max_excess) {
          max_excess = tv - threshold;
          cross.max_pairwise_tv = tv;
          cross.tau_threshold_at_max = threshold;
        }
      }
    }
    cross.tau_dependent = dependent;
  }

  // Symmetry between coupling signs, on the |omega| marginals.
  std::vector<const BenchmarkReport*> positive, negative;
  for (const auto& report : reports) {
    const int sign = coupling_sign_of(report.meta);
    if (sign > 0) positive.push_back(&report);
    if (sign < 0) negative.push_back(&report);
  }
  if (!positive.empty() && !negative.empty()) {
    const auto plus = pooled_distribution(positive, &BenchmarkReport::abs_omega);
    const auto minus = pooled_distribution(negative, &BenchmarkReport::abs_omega);
    cross.symmetry_tv = plus.total_variation(minus);
    cross.symmetric = cross.symmetry_tv <= thresholds.symmetry_eps;
  }
  return cross;
}

// ----------------------------------------------------------------------------
// Report output
// ----------------------------------------------------------------------------

namespace {

json distribution_to_json(const tpm::WorkDistribution& distribution) {
  json rows = json::array();
  for (const auto& [key, p] : distribution.probabilities()) {
    rows.push_back({{"key", key}, {"probability", p}});
  }
  return rows;
}

json report_json(const BenchmarkReport& report) {
  json j;
  j["meta"]["L"] = report.meta.length;
  if (report.meta.uniform_coupling && !report.meta.couplings.empty()) {
    j["meta"]["J"] = report.meta.couplings.front();
  } else {
    j["meta"]["J"] = report.meta.couplings;
  }
  j["meta"]["tau_us"] = report.meta.tau_us;
  j["meta"]["machine"] = report.meta.machine;
  j["shots"] = report.shots;
  j["delta_omega"] = distribution_to_json(report.delta_omega);
  j["abs_omega"] = distribution_to_json(report.abs_omega);
  j["ft"] = {{"estimate", report.ft.estimate},
             {"ci_low", report.ft.ci_low},
             {"ci_high", report.ft.ci_high},
             {"bootstrap", report.ft.bootstrap},
             {"level", report.ft.level}};
  j["tv_to_ideal"] = report.tv_to_ideal;
  j["kinks"] = {{"mean", report.kinks.mean},
                {"density", report.kinks.density},
                {"stderr_mean", report.kinks.stderr_mean},
                {"stderr_density", report.kinks.stderr_density}};
  j["adiabatic_threshold"] = {
      {"tau_ad_us", report.threshold.tau_ad_us},
      {"crossing_s", report.threshold.crossing_s},
      {"delta_at_crossing_ghz", report.threshold.delta_at_crossing_ghz}};
  j["thresholds"] = {{"unital_eps", report.thresholds.unital_eps},
                     {"adiabatic_eps", report.thresholds.adiabatic_eps},
                     {"tau_noise_multiplier", report.thresholds.tau_noise_multiplier},
                     {"symmetry_eps", report.thresholds.symmetry_eps}};
  j["verdicts"] = {{"unital", report.unital}, {"adiabatic", report.adiabatic}};
  return j;
}

json cross_json(const CrossVerdicts& cross) {
  json j;
  j["tau_groups"] = cross.tau_groups;
  if (cross.tau_dependent.has_value()) {
    j["tau_dependent"] = *cross.tau_dependent;
    j["max_pairwise_tv"] = cross.max_pairwise_tv;
    j["tau_threshold_at_max"] = cross.tau_threshold_at_max;
  } else {
    j["tau_dependent"] = nullptr;
  }
  if (cross.symmetric.has_value()) {
    j["symmetric"] = *cross.symmetric;
    j["symmetry_tv"] = cross.symmetry_tv;
  } else {
    j["symmetric"] = nullptr;
  }
  return j;
}

}  // namespace

std::string report_to_json(const BenchmarkReport& report) {
  return report_json(report).dump(2);
}

std::string reports_to_json(const std::vector<BenchmarkReport>& reports,
                            const CrossVerdicts& cross) {
  json j;
  j["reports"] = json::array();
  for (const auto& report : reports) j["reports"].push_back(report_json(report));
  j["cross"] = cross_json(cross);
  return j.dump(2);
}

void write_histogram_csvs(const BenchmarkReport& report,
                          const std::filesystem::path& directory,
                          const std::string& stem) {
  tpm::write_distribution_csv(report.delta_omega,
                              directory / (stem + "_delta_omega.csv"));

  const auto renorm_path = directory / (stem + "_abs_omega_renorm.csv");
  std::ofstream out(renorm_path);
  if (!out) throw io_error("cannot write histogram " + renorm_path.string());
  out << "abs_omega_renorm,probability\n";
  char buffer[96];
  const double norm = static_cast<double>(report.meta.length - 1);
  for (const auto& [key, p] : report.abs_omega.probabilities()) {
    std::snprintf(buffer, sizeof(buffer), "%.17g,%.17g\n",
                  static_cast<double>(key) / norm, p);
    out << buffer;
  }
  if (!out) throw io_error("failed writing histogram " + renorm_path.string());
}

}  // namespace ftbench::bench
