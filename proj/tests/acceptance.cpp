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
//
// End-to-end acceptance checks.  Each criterion prints one PASS/FAIL line;
// the exit status is the number of failures.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "ftbench/bench.hpp"
#include "ftbench/chimera.hpp"
#include "ftbench/run.hpp"
#include "ftbench/tpm.hpp"

using namespace ftbench;
using dynamics::EvolutionConfig;
using dynamics::QuantumMap;
using model::AnnealSchedule;
using model::ChainSpec;

namespace {

int failures = 0;

void require(bool condition, const std::string& message) {
  if (!condition) throw std::runtime_error(message);
}

void run_criterion(int id, const std::string& name,
                   const std::function<void()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body();
    const double dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0).count();
    std::printf("[PASS] criterion %d: %s (%.1fs)\n", id, name.c_str(), dt);
  } catch (const std::exception& e) {
    const double dt = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0).count();
    std::printf("[FAIL] criterion %d: %s (%.1fs): %s\n", id, name.c_str(), dt,
                e.what());
    ++failures;
  }
  std::fflush(stdout);
}

std::string format_double(double value) {
  std::ostringstream out;
  out.precision(12);
  out << value;
  return out.str();
}

// --------------------------------------------------------------------------
// 1. Fluctuation identity across randomized channels
// --------------------------------------------------------------------------

AnnealSchedule random_schedule(std::mt19937_64& rng, double tau_us) {
  const double g0 = 1.0 + 5.0 * uniform_unit(rng);
  const double d0 = 0.5 * g0 * uniform_unit(rng);
  const double d1 = 1.0 + 5.0 * uniform_unit(rng);
  const double g1 = 0.5 * d1 * uniform_unit(rng);
  std::vector<model::ScheduleKnot> knots;
  knots.push_back({0.0, g0, d0});
  if (uniform_unit(rng) < 0.5) {
    knots.push_back({0.2 + 0.6 * uniform_unit(rng), 6.0 * uniform_unit(rng),
                     6.0 * uniform_unit(rng)});
  }
  knots.push_back({1.0, g1, d1});
  return AnnealSchedule(tau_us, std::move(knots));
}

noise::NoiseModel random_noise(std::mt19937_64& rng) {
  const double pick = uniform_unit(rng);
  const double rate = 0.5 * uniform_unit(rng);
  if (pick < 0.15) return {};
  if (pick < 0.35) return {noise::NoiseKind::dephasing, rate};
  if (pick < 0.55) return {noise::NoiseKind::depolarizing, rate};
  if (pick < 0.80) return {noise::NoiseKind::amplitude_damping, rate};
  return {noise::NoiseKind::thermal, rate, uniform_unit(rng)};
}

Matrix random_density(Index dim, std::mt19937_64& rng) {
  Matrix a(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      a(i, j) = Complex(uniform_unit(rng) - 0.5, uniform_unit(rng) - 0.5);
    }
  }
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return rho;
}

void criterion_ft_identity() {
  std::mt19937_64 rng(20260809);
  double worst = 0.0;
  const int cases = 100;
  for (int trial = 0; trial < cases; ++trial) {
    const int length = 2 + static_cast<int>(rng() % 7);  // 2..8
    const Index dim = Index(1) << length;
    std::vector<double> couplings(static_cast<std::size_t>(length - 1));
    for (auto& j : couplings) j = uniform_unit(rng) < 0.5 ? -1.0 : 1.0;
    const ChainSpec spec(length, couplings);
    const auto schedule = random_schedule(rng, 0.05 + 5.0 * uniform_unit(rng));
    const int steps = 2 + static_cast<int>(rng() % 7);
    const noise::NoiseModel noise_model = random_noise(rng);
    const Matrix rho = random_density(dim, rng);

    const auto omega_i = model::build_omega_initial(length);
    const auto omega_f = model::build_omega_final(spec);
    const auto map = QuantumMap::channel(spec, schedule, noise_model,
                                         {steps, kDefaultMaxQubits});

    const auto transitions =
        tpm::transition_matrix(rho, omega_i, omega_f, map);
    const double average =
        tpm::exponential_average(tpm::work_distribution(transitions));
    const double gamma = tpm::efficacy(rho, omega_i, omega_f, map);
    worst = std::max(worst, std::abs(average - gamma));
  }
  require(worst <= 1e-8, "max |<exp(-dw)> - gamma| = " + format_double(worst));
}

// --------------------------------------------------------------------------
// 2. Ideal annealer
// --------------------------------------------------------------------------

run::RunConfig base_config(int length, double coupling) {
  run::RunConfig config;
  config.length = length;
  config.couplings.assign(static_cast<std::size_t>(length - 1), coupling);
  config.fields.assign(static_cast<std::size_t>(length), 0.0);
  config.steps = 2000;
  config.shots = 1;
  config.seed = 1;
  return config;
}

void criterion_ideal_annealer() {
  const int length = 6;
  const auto threshold =
      bench::adiabatic_threshold(length, AnnealSchedule::linear_default(1.0));
  const double tau = 40.0 * threshold.tau_ad_us;  // comfortably past 10x

  run::RunConfig ferro = base_config(length, 1.0);
  const auto up = run::simulate_cell(ferro, tau, 1);
  require(up.exact_abs.probability(length - 1) >= 0.999,
          "ground-manifold weight " +
              format_double(up.exact_abs.probability(length - 1)));
  require(std::abs(up.exponential_avg - 1.0) <= 1e-3,
          "<exp(-dw)> = " + format_double(up.exponential_avg));

  run::RunConfig antiferro = base_config(length, -1.0);
  const auto down = run::simulate_cell(antiferro, tau, 1);
  require(std::abs(down.exponential_avg - 1.0) <= 1e-3,
          "antiferro <exp(-dw)> = " + format_double(down.exponential_avg));
  require(up.exact_delta.total_variation(down.exact_delta) <= 1e-9,
          "gauge asymmetry " +
              format_double(up.exact_delta.total_variation(down.exact_delta)));
}

// --------------------------------------------------------------------------
// 3. Unital vs non-unital discrimination
// --------------------------------------------------------------------------

void criterion_unital_discrimination() {
  const int length = 6;
  const double tau = 20.0;
  const double rate = 0.05;
  const ChainSpec spec = ChainSpec::uniform(length, 1.0);
  const auto schedule = AnnealSchedule::linear_default(tau);
  const EvolutionConfig config{1000, kDefaultMaxQubits};

  const auto omega_i = model::build_omega_initial(length);
  const auto omega_f = model::build_omega_final(spec);
  const Matrix rho0 =
      model::ground_state(model::build_hamiltonian(spec, schedule, 0.0))
          .to_density();

  const noise::NoiseModel dephasing(noise::NoiseKind::dephasing, rate);
  const noise::NoiseModel damping(noise::NoiseKind::amplitude_damping, rate);

  // Identity holds for both channels through the full pipeline.
  for (const auto& noise_model : {dephasing, damping}) {
    const auto map = QuantumMap::channel(spec, schedule, noise_model, config);
    const double average = tpm::exponential_average(
        tpm::work_distribution(tpm::transition_matrix(rho0, omega_i, omega_f, map)));
    const double gamma = tpm::efficacy(rho0, omega_i, omega_f, map);
    require(std::abs(average - gamma) <= 1e-8,
            noise_model.describe() + ": |avg - gamma| = " +
                format_double(std::abs(average - gamma)));
  }

  // Channel-level witness classifies the two noises.
  const double p_slice = rate * tau / config.steps;
  require(noise::is_unital(noise::kraus_for(dephasing, p_slice)).unital,
          "dephasing should be unital");
  require(!noise::is_unital(noise::kraus_for(damping, p_slice)).unital,
          "amplitude damping should not be unital");

  // Shot-data verdict flags the damped run.
  run::RunConfig damped = base_config(length, 1.0);
  damped.noise = damping;
  damped.steps = config.steps;
  damped.shots = 100000;
  const auto cell = run::simulate_cell(damped, tau, 21);
  const auto report = bench::analyze_archive(
      cell.shots, AnnealSchedule::linear_default(1.0), {}, 500, 21);
  require(!report.unital, "amplitude-damped archive should fail the unital "
                          "verdict; estimate " +
                              format_double(report.ft.estimate));
}

// --------------------------------------------------------------------------
// 4. Tau dependence detection
// --------------------------------------------------------------------------

void criterion_tau_dependence() {
  const int length = 6;
  const std::vector<double> taus = {5.0, 50.0};

  const auto analyze_pair = [&](const noise::NoiseModel& noise_model) {
    std::vector<bench::BenchmarkReport> reports;
    for (std::size_t i = 0; i < taus.size(); ++i) {
      run::RunConfig config = base_config(length, 1.0);
      config.noise = noise_model;
      config.steps = 800;
      config.shots = 100000;
      const auto cell =
          run::simulate_cell(config, taus[i], 31 + 7 * static_cast<std::uint64_t>(i));
      reports.push_back(bench::analyze_archive(
          cell.shots, AnnealSchedule::linear_default(1.0), {}, 400, 31));
      reports.back().meta.tau_us = taus[i];
    }
    return bench::verdicts(reports, {});
  };

  const auto damped =
      analyze_pair({noise::NoiseKind::amplitude_damping, 0.05});
  require(damped.tau_dependent.has_value() && *damped.tau_dependent,
          "damped runs should be tau dependent (max TV " +
              format_double(damped.max_pairwise_tv) + ")");

  const auto clean = analyze_pair({});
  require(clean.tau_dependent.has_value() && !*clean.tau_dependent,
          "noiseless adiabatic runs should not be tau dependent (max TV " +
              format_double(clean.max_pairwise_tv) + ")");
}

// --------------------------------------------------------------------------
// 5. Adiabatic threshold arithmetic
// --------------------------------------------------------------------------

void criterion_threshold_arithmetic() {
  const AnnealSchedule symmetric(1.0, {{0.0, 2.0, 0.0}, {1.0, 0.0, 2.0}});
  const auto threshold = bench::adiabatic_threshold(100, symmetric);
  require(threshold.delta_at_crossing_ghz == 1.0,
          "crossing amplitude " + format_double(threshold.delta_at_crossing_ghz));
  require(threshold.tau_ad_us == 10.0,
          "tau_ad = " + format_double(threshold.tau_ad_us));
}

// --------------------------------------------------------------------------
// 6. Kink trend over four decades of anneal time
// --------------------------------------------------------------------------

void criterion_kink_trend() {
  const int length = 8;
  const Index dim = Index(1) << length;
  const ChainSpec spec = ChainSpec::uniform(length, 1.0);
  const auto profile = AnnealSchedule::linear_default(1.0);
  const double tau_ad = bench::adiabatic_threshold(length, profile).tau_ad_us;
  const std::vector<double> multipliers = {0.01, 0.1, 1.0, 10.0, 100.0};
  const int steps = 2000;

  std::vector<int> kink_table(static_cast<std::size_t>(dim));
  for (Index z = 0; z < dim; ++z) {
    kink_table[static_cast<std::size_t>(z)] =
        model::kink_count(static_cast<std::uint64_t>(z), spec);
  }

  const Vector psi0 =
      model::ground_state(model::build_hamiltonian(spec, profile, 0.0))
          .statevector();

  // One eigendecomposition sweep drives all anneal times at once; only the
  // per-slice phase differs between columns.
  Matrix columns(dim, static_cast<Index>(multipliers.size()));
  for (Index c = 0; c < columns.cols(); ++c) columns.col(c) = psi0;
  for (int k = 0; k < steps; ++k) {
    const double s = (k + 0.5) / steps;
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        model::build_hamiltonian(spec, profile, s));
    Matrix coeffs = es.eigenvectors().adjoint() * columns;
    for (std::size_t c = 0; c < multipliers.size(); ++c) {
      const double theta =
          kPhasePerGhzUs * multipliers[c] * tau_ad / static_cast<double>(steps);
      for (Index r = 0; r < dim; ++r) {
        coeffs(r, static_cast<Index>(c)) *=
            std::polar(1.0, -theta * es.eigenvalues()(r));
      }
    }
    columns.noalias() = es.eigenvectors() * coeffs;
  }

  std::vector<double> mean_kinks;
  for (std::size_t c = 0; c < multipliers.size(); ++c) {
    double mean = 0.0;
    for (Index z = 0; z < dim; ++z) {
      mean += std::norm(columns(z, static_cast<Index>(c))) *
              kink_table[static_cast<std::size_t>(z)];
    }
    mean_kinks.push_back(mean);
  }

  std::ostringstream trend;
  for (double k : mean_kinks) trend << k << " ";
  for (std::size_t i = 0; i + 1 < mean_kinks.size(); ++i) {
    require(mean_kinks[i + 1] <= mean_kinks[i] + 1e-12,
            "kink trend is not monotone: " + trend.str());
  }
  for (std::size_t i = 0; i < multipliers.size(); ++i) {
    if (multipliers[i] >= 10.0) {
      require(mean_kinks[i] < 0.01,
              "tau = " + format_double(multipliers[i]) +
                  " tau_ad still carries " + format_double(mean_kinks[i]) +
                  " kinks");
    }
  }
}

// --------------------------------------------------------------------------
// 7. Sudden-quench closed form with bootstrap coverage
// --------------------------------------------------------------------------

void criterion_sudden_quench() {
  const int length = 2;
  const ChainSpec spec = ChainSpec::uniform(length, 1.0);
  const auto omega_i = model::build_omega_initial(length);
  const auto omega_f = model::build_omega_final(length);
  Vector psi = Vector::Constant(4, Complex(0.5, 0.0));
  const Matrix rho = psi * psi.adjoint();

  const auto transitions =
      tpm::transition_matrix(rho, omega_i, omega_f, QuantumMap::identity(4));
  const auto distribution = tpm::work_distribution(transitions);
  const double truth = 0.5 + 0.5 * std::exp(2.0);
  require(std::abs(distribution.probability(0) - 0.5) <= 1e-12, "P(0) != 1/2");
  require(std::abs(distribution.probability(-2) - 0.5) <= 1e-12, "P(-2) != 1/2");
  require(std::abs(tpm::exponential_average(distribution) - truth) <= 1e-12,
          "closed form mismatch");
  require(std::abs(tpm::efficacy(rho, omega_i, omega_f, QuantumMap::identity(4)) -
                   truth) <= 1e-12,
          "efficacy mismatch");

  // Coverage experiment: 100 seeded sampling trials at N = 1e5.
  const RealVector probs = RealVector::Constant(4, 0.25);
  int covered = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const auto archive = tpm::sample_shots(probs, spec, 100000, 1000 + trial);
    const auto estimate = bench::ft_estimate(archive, spec, 1000, 5000 + trial);
    if (estimate.ci_low <= truth && truth <= estimate.ci_high) ++covered;
  }
  require(covered >= 93, "bootstrap CI covered the truth in only " +
                             std::to_string(covered) + "/100 trials");
}

// --------------------------------------------------------------------------
// 8. Estimator round trip at the million-shot scale
// --------------------------------------------------------------------------

void criterion_round_trip() {
  const int length = 6;
  const auto threshold =
      bench::adiabatic_threshold(length, AnnealSchedule::linear_default(1.0));

  run::RunConfig config = base_config(length, 1.0);
  config.steps = 600;
  config.shots = 1000000;
  const auto cell =
      run::simulate_cell(config, 0.5 * threshold.tau_ad_us, 2026);

  const auto spec = config.chain();
  const auto empirical = bench::empirical_distribution(cell.shots, spec);
  std::set<long long> support;
  for (const auto& [key, p] : cell.exact_delta.probabilities()) support.insert(key);
  for (const auto& [key, p] : empirical.delta_omega.probabilities()) support.insert(key);

  const double tv = empirical.delta_omega.total_variation(cell.exact_delta);
  const double bound =
      5.0 * std::sqrt(static_cast<double>(support.size()) / 1e6);
  require(tv <= bound, "TV " + format_double(tv) + " exceeds " +
                           format_double(bound));

  const auto estimate = bench::ft_estimate(cell.shots, spec, 1000, 2027);
  require(estimate.ci_low <= cell.exponential_avg &&
              cell.exponential_avg <= estimate.ci_high,
          "CI [" + format_double(estimate.ci_low) + ", " +
              format_double(estimate.ci_high) + "] misses " +
              format_double(cell.exponential_avg));
}

// --------------------------------------------------------------------------
// 9. Chimera structure
// --------------------------------------------------------------------------

void criterion_chimera() {
  for (int rows = 1; rows <= 8; ++rows) {
    for (int cols = 1; cols <= 8; ++cols) {
      const chimera::ChimeraGraph graph(rows, cols, 4);
      const long long expected_edges = 16LL * rows * cols +
                                       4LL * (rows - 1) * cols +
                                       4LL * rows * (cols - 1);
      require(graph.node_count() == rows * cols * 8, "node count");
      require(graph.edge_count() == expected_edges, "edge count");
    }
  }

  const chimera::ChimeraGraph full(12, 12, 4);
  require(full.node_count() == 1152, "2000Q-scale node count");
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto chain = chimera::random_chain(full, 50, seed);
    const auto report = chimera::validate_embedding(full, chain);
    require(report.ok, "seed " + std::to_string(seed) + ": " + report.violation);
  }
}

}  // namespace

int main() {
  run_criterion(1, "fluctuation identity over randomized channels",
                criterion_ft_identity);
  run_criterion(2, "ideal annealer outcome and gauge symmetry",
                criterion_ideal_annealer);
  run_criterion(3, "unital vs non-unital discrimination",
                criterion_unital_discrimination);
  run_criterion(4, "tau-dependence detection", criterion_tau_dependence);
  run_criterion(5, "adiabatic threshold arithmetic",
                criterion_threshold_arithmetic);
  run_criterion(6, "kink trend across four decades", criterion_kink_trend);
  run_criterion(7, "sudden-quench closed form and bootstrap coverage",
                criterion_sudden_quench);
  run_criterion(8, "million-shot estimator round trip", criterion_round_trip);
  run_criterion(9, "chimera counts and random chains", criterion_chimera);

  if (failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria failed\n", failures);
  }
  return failures;
}
