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

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "ftbench/bench.hpp"
#include "ftbench/dynamics.hpp"
#include "test_support.hpp"

using namespace ftbench;
using namespace ftbench::dynamics;
using model::AnnealSchedule;
using model::ChainSpec;

namespace {

/// Direct matrix exponential exp(-i 2pi 1e3 H tau) psi, used as the oracle
/// for time-independent evolution.
Vector exact_exponential(const Matrix& h, double tau_us, const Vector& psi) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector coeffs = es.eigenvectors().adjoint() * psi;
  for (Index i = 0; i < coeffs.size(); ++i) {
    coeffs(i) *= std::polar(1.0, -kPhasePerGhzUs * tau_us * es.eigenvalues()(i));
  }
  return es.eigenvectors() * coeffs;
}

Matrix gauge_operator(int length) {
  Matrix g = Matrix::Identity(1, 1);
  for (int n = length - 1; n >= 0; --n) {
    g = test::kron(g, n % 2 == 1 ? test::pauli_x()
                                 : Matrix::Identity(2, 2).eval());
  }
  return g;
}

}  // namespace

TEST_CASE("vanishing anneal time reduces to the identity") {
  const ChainSpec spec = ChainSpec::uniform(3, 1.0);
  const auto schedule = AnnealSchedule::linear_default(1e-15);
  std::mt19937_64 rng(3);
  const Vector psi = test::random_statevector(8, rng);

  const auto out = evolve_unitary(model::QuantumState::pure(psi), spec,
                                  schedule, {1, kDefaultMaxQubits});
  CHECK((out.statevector() - psi).norm() <= 1e-9);
}

TEST_CASE("time-independent evolution matches the matrix exponential") {
  const ChainSpec spec = ChainSpec::uniform(3, 1.0);
  const AnnealSchedule profile(1.0, {{0, 2, 0}, {1, 0, 2}});
  const Matrix h = model::build_hamiltonian(spec, profile, 0.5);
  std::mt19937_64 rng(5);
  const Vector psi = test::random_statevector(8, rng);
  const double tau = 0.37;

  const Vector oracle = exact_exponential(h, tau, psi);
  for (int steps : {1, 7, 50}) {
    const Vector approx =
        evolve_statevector(psi, [&](double) { return h; }, tau, steps);
    CHECK((approx - oracle).norm() <= 1e-8);
  }
}

TEST_CASE("slow anneal lands in the final ground manifold") {
  const ChainSpec spec = ChainSpec::uniform(3, 1.0);
  const auto threshold = bench::adiabatic_threshold(3, AnnealSchedule::linear_default(1.0));
  const auto schedule = AnnealSchedule::linear_default(50.0 * threshold.tau_ad_us);

  const auto start = model::ground_state(
      model::build_hamiltonian(spec, schedule, 0.0));
  const auto final_state =
      evolve_unitary(start, spec, schedule, {400, kDefaultMaxQubits});

  // Weight on the defect-free bond sector.
  const auto omega = model::build_omega_final(spec);
  const double weight = (omega.pairs().front().projector *
                         final_state.to_density()).trace().real();
  CHECK(weight >= 0.999);
}

TEST_CASE("norm and unitarity are preserved") {
  const ChainSpec spec = ChainSpec::uniform(2, 1.0);
  const auto schedule = AnnealSchedule::linear_default(0.8);

  const QuantumMap map = QuantumMap::unitary(spec, schedule, {10000, kDefaultMaxQubits});
  const Matrix& u = *map.composed_unitary();
  CHECK(max_abs(u.adjoint() * u - Matrix::Identity(4, 4)) <= 1e-9);

  std::mt19937_64 rng(9);
  const Vector psi = test::random_statevector(4, rng);
  const auto out = evolve_unitary(model::QuantumState::pure(psi), spec,
                                  schedule, {500, kDefaultMaxQubits});
  CHECK(std::abs(out.statevector().norm() - 1.0) <= 1e-9);
}

TEST_CASE("zero-strength noise reproduces the unitary channel") {
  const ChainSpec spec = ChainSpec::uniform(3, 1.0);
  const auto schedule = AnnealSchedule::linear_default(0.5);
  std::mt19937_64 rng(13);
  const Vector psi = test::random_statevector(8, rng);
  const Matrix rho = psi * psi.adjoint();
  const EvolutionConfig config{60, kDefaultMaxQubits};

  const Matrix noisy =
      evolve_channel(rho, spec, schedule, noise::NoiseModel(), config);
  const auto unitary = evolve_unitary(model::QuantumState::pure(psi), spec,
                                      schedule, config);
  CHECK(max_abs(noisy - unitary.to_density()) <= 1e-9);
}

TEST_CASE("complete depolarization pins the maximally mixed state") {
  const ChainSpec spec = ChainSpec::uniform(2, 1.0);
  const auto schedule = AnnealSchedule::linear_default(1.0);
  // One slice with event probability 3/4: every site is replaced by I/2.
  const noise::NoiseModel depolarizing(noise::NoiseKind::depolarizing, 0.75);
  std::mt19937_64 rng(19);
  const Matrix rho = test::random_density(4, rng);

  const Matrix out =
      evolve_channel(rho, spec, schedule, depolarizing, {1, kDefaultMaxQubits});
  CHECK(max_abs(out - Matrix::Identity(4, 4) * 0.25) <= 1e-9);
}

TEST_CASE("noisy evolution stays a density matrix and self-converges") {
  // Gentle amplitudes keep the per-slice phase small enough to sit in the
  // asymptotic regime of the first-order splitting; the dephasing event
  // probability is 0.01 per slice at the coarse step count.
  const ChainSpec spec = ChainSpec::uniform(4, 1.0);
  const AnnealSchedule schedule(0.2, {{0, 0.005, 0}, {1, 0, 0.005}});
  const noise::NoiseModel dephasing(noise::NoiseKind::dephasing, 5.0);

  const Matrix rho0 =
      model::ground_state(model::build_hamiltonian(spec, schedule, 0.0))
          .to_density();

  const Matrix coarse = evolve_channel(rho0, spec, schedule, dephasing,
                                       {100, kDefaultMaxQubits});
  CHECK(std::abs(coarse.trace().real() - 1.0) <= 1e-10);
  CHECK(hermiticity_defect(coarse) <= 1e-10);
  Eigen::SelfAdjointEigenSolver<Matrix> es(coarse, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() >= -1e-8);

  const Matrix quadrupled = evolve_channel(rho0, spec, schedule, dephasing,
                                           {400, kDefaultMaxQubits});
  CHECK(max_abs(coarse - quadrupled) <= 1e-4);

  const Matrix medium = evolve_channel(rho0, spec, schedule, dephasing,
                                       {200, kDefaultMaxQubits});
  const Matrix reference = evolve_channel(rho0, spec, schedule, dephasing,
                                          {3200, kDefaultMaxQubits});
  const double error_coarse = max_abs(coarse - reference);
  const double error_medium = max_abs(medium - reference);
  // First-order splitting: halving the slice halves the error.
  CHECK(error_coarse / error_medium >= 2.0);
}

TEST_CASE("gauge conjugation maps J to -J") {
  const int length = 4;
  const ChainSpec ferro = ChainSpec::uniform(length, 1.0);
  const ChainSpec antiferro = ChainSpec::uniform(length, -1.0);
  const auto schedule = AnnealSchedule::linear_default(0.05);
  const Matrix gauge = gauge_operator(length);
  const EvolutionConfig config{40, kDefaultMaxQubits};

  std::mt19937_64 rng(29);
  const Matrix rho = test::random_density(Index(1) << length, rng);
  const Matrix mirrored = gauge * rho * gauge;

  // Map property: evolving the mirrored state under -J equals mirroring the
  // J evolution, slice by slice.
  SUBCASE("unitary dynamics") {
    const Matrix a = evolve_channel(rho, ferro, schedule, {}, config);
    const Matrix b = evolve_channel(mirrored, antiferro, schedule, {}, config);
    CHECK(max_abs(gauge * a * gauge - b) <= 1e-12);
  }
  SUBCASE("dephasing dynamics") {
    const noise::NoiseModel dephasing(noise::NoiseKind::dephasing, 2.0);
    const Matrix a = evolve_channel(rho, ferro, schedule, dephasing, config);
    const Matrix b =
        evolve_channel(mirrored, antiferro, schedule, dephasing, config);
    CHECK(max_abs(gauge * a * gauge - b) <= 1e-12);
  }
  SUBCASE("depolarizing dynamics") {
    const noise::NoiseModel depolarizing(noise::NoiseKind::depolarizing, 2.0);
    const Matrix a = evolve_channel(rho, ferro, schedule, depolarizing, config);
    const Matrix b =
        evolve_channel(mirrored, antiferro, schedule, depolarizing, config);
    CHECK(max_abs(gauge * a * gauge - b) <= 1e-12);
  }
}

TEST_CASE("propagator table matches streaming evolution across anneal times") {
  const ChainSpec spec = ChainSpec::uniform(3, 1.0);
  const auto profile = AnnealSchedule::linear_default(1.0);
  const EvolutionConfig config{64, kDefaultMaxQubits};
  const PropagatorTable table(spec, profile, config);

  std::mt19937_64 rng(23);
  const Vector psi = test::random_statevector(8, rng);
  for (double tau : {0.01, 0.1, 1.0}) {
    const Vector streamed = evolve_statevector(
        psi,
        [&](double s) { return model::build_hamiltonian(spec, profile, s); },
        tau, config.steps);
    CHECK((table.propagate(psi, tau) - streamed).norm() <= 1e-12);
  }
}

TEST_CASE("evolution input validation") {
  const ChainSpec spec = ChainSpec::uniform(2, 1.0);
  const auto schedule = AnnealSchedule::linear_default(1.0);
  Vector wrong_dim = Vector::Zero(8);
  wrong_dim(0) = 1.0;
  CHECK_THROWS_AS(evolve_unitary(model::QuantumState::pure(wrong_dim), spec,
                                 schedule, {10, kDefaultMaxQubits}),
                  validation_error);
  CHECK_THROWS_AS(evolve_channel(Matrix::Identity(4, 4), spec, schedule, {},
                                 {10, kDefaultMaxQubits}),
                  validation_error);  // trace 4, not a density matrix
  CHECK_THROWS_AS(evolve_unitary(model::QuantumState::pure(Vector::Unit(4, 0)),
                                 spec, schedule, {0, kDefaultMaxQubits}),
                  validation_error);
}
