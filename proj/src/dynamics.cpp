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

#include "ftbench/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <iostream>

namespace ftbench::dynamics {

namespace {

void check_config(const EvolutionConfig& config) {
  if (config.steps < 1) {
    throw validation_error("evolution needs at least one time slice");
  }
}

double slice_probability(const noise::NoiseModel& model, double dt_us) {
  const double p = model.rate * dt_us;
  if (p > 1.0) {
    std::cerr << "ftbench: warning: noise rate " << model.rate
              << "/us gives per-slice probability " << p
              << " > 1; capping at 1\n";
    return 1.0;
  }
  return p;
}

Vector apply_slice(const RealVector& eigenvalues, const Matrix& eigenvectors,
                   double theta, const Vector& psi) {
  Vector coeffs = eigenvectors.adjoint() * psi;
  for (Index i = 0; i < coeffs.size(); ++i) {
    coeffs(i) *= std::polar(1.0, -theta * eigenvalues(i));
  }
  return eigenvectors * coeffs;
}

}  // namespace

Vector evolve_statevector(Vector psi, const HamiltonianFn& h_of_s,
                          double tau_us, int steps) {
  if (steps < 1) throw validation_error("evolution needs at least one time slice");
  if (tau_us < 0.0) throw validation_error("anneal time must be nonnegative");
  const double dt = tau_us / steps;
  const double theta = kPhasePerGhzUs * dt;
  for (int k = 0; k < steps; ++k) {
    const double s = (k + 0.5) / steps;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h_of_s(s));
    psi = apply_slice(es.eigenvalues(), es.eigenvectors(), theta, psi);
  }
  return psi;
}

model::QuantumState evolve_unitary(const model::QuantumState& state,
                                   const model::ChainSpec& spec,
                                   const model::AnnealSchedule& schedule,
                                   const EvolutionConfig& config) {
  check_config(config);
  const Index dim = Index(1) << spec.length();
  if (state.dim() != dim) {
    throw validation_error("state dimension does not match the chain");
  }
  const auto h_of_s = [&](double s) {
    return model::build_hamiltonian(spec, schedule, s, config.max_qubits);
  };
  if (state.is_pure()) {
    Vector psi = evolve_statevector(state.statevector(), h_of_s,
                                    schedule.tau_us(), config.steps);
    psi /= psi.norm();
    return model::QuantumState::pure(std::move(psi));
  }
  const QuantumMap map = QuantumMap::unitary(spec, schedule, config);
  return model::QuantumState::mixed(map.apply(state.density_matrix()));
}

Matrix evolve_channel(const Matrix& rho, const model::ChainSpec& spec,
                      const model::AnnealSchedule& schedule,
                      const noise::NoiseModel& noise_model,
                      const EvolutionConfig& config) {
  check_config(config);
  model::QuantumState::mixed(rho);  // validates
  const QuantumMap map = QuantumMap::channel(spec, schedule, noise_model, config);
  if (rho.rows() != map.dim()) {
    throw validation_error("state dimension does not match the chain");
  }
  return map.apply(rho);
}

// ----------------------------------------------------------------------------
// PropagatorTable
// ----------------------------------------------------------------------------

PropagatorTable::PropagatorTable(const model::ChainSpec& spec,
                                 const model::AnnealSchedule& schedule,
                                 const EvolutionConfig& config) {
  check_config(config);
  ensure_capacity(spec.length(), config.max_qubits);
  slices_.reserve(static_cast<std::size_t>(config.steps));
  for (int k = 0; k < config.steps; ++k) {
    const double s = (k + 0.5) / config.steps;
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        model::build_hamiltonian(spec, schedule, s, config.max_qubits));
    slices_.push_back({es.eigenvalues(), es.eigenvectors()});
  }
}

Vector PropagatorTable::propagate(Vector psi, double tau_us) const {
  if (tau_us < 0.0) throw validation_error("anneal time must be nonnegative");
  const double theta = kPhasePerGhzUs * tau_us / static_cast<double>(slices_.size());
  for (const auto& slice : slices_) {
    psi = apply_slice(slice.eigenvalues, slice.eigenvectors, theta, psi);
  }
  return psi;
}

// ----------------------------------------------------------------------------
// QuantumMap
// ----------------------------------------------------------------------------

QuantumMap QuantumMap::identity(Index dim) {
  QuantumMap map(dim);
  map.unitary_ = std::make_shared<const Matrix>(Matrix::Identity(dim, dim));
  return map;
}

QuantumMap QuantumMap::from_unitary_matrix(Matrix u) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw validation_error("unitary must be square");
  }
  if (max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())) > 1e-9) {
    throw validation_error("matrix is not unitary");
  }
  QuantumMap map(u.rows());
  map.unitary_ = std::make_shared<const Matrix>(std::move(u));
  return map;
}

QuantumMap QuantumMap::from_function(Index dim, ApplyFn fn) {
  QuantumMap map(dim);
  map.fn_ = std::move(fn);
  return map;
}

QuantumMap QuantumMap::unitary(const model::ChainSpec& spec,
                               const model::AnnealSchedule& schedule,
                               const EvolutionConfig& config) {
  check_config(config);
  ensure_capacity(spec.length(), config.max_qubits);
  const Index dim = Index(1) << spec.length();
  const double dt = schedule.tau_us() / config.steps;
  const double theta = kPhasePerGhzUs * dt;

  Matrix total = Matrix::Identity(dim, dim);
  for (int k = 0; k < config.steps; ++k) {
    const double s = (k + 0.5) / config.steps;
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        model::build_hamiltonian(spec, schedule, s, config.max_qubits));
    Matrix phased = es.eigenvectors();
    for (Index c = 0; c < dim; ++c) {
      phased.col(c) *= std::polar(1.0, -theta * es.eigenvalues()(c));
    }
    total = (phased * es.eigenvectors().adjoint() * total).eval();
  }
  QuantumMap map(dim);
  map.unitary_ = std::make_shared<const Matrix>(std::move(total));
  return map;
}

QuantumMap QuantumMap::channel(const model::ChainSpec& spec,
                               const model::AnnealSchedule& schedule,
                               const noise::NoiseModel& noise_model,
                               const EvolutionConfig& config) {
  if (!noise_model.enabled()) return unitary(spec, schedule, config);
  check_config(config);
  ensure_capacity(spec.length(), config.max_qubits);
  const Index dim = Index(1) << spec.length();
  const double dt = schedule.tau_us() / config.steps;
  const double theta = kPhasePerGhzUs * dt;
  const double p_slice = slice_probability(noise_model, dt);

  auto slices = std::make_shared<std::vector<Matrix>>();
  slices->reserve(static_cast<std::size_t>(config.steps));
  for (int k = 0; k < config.steps; ++k) {
    const double s = (k + 0.5) / config.steps;
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        model::build_hamiltonian(spec, schedule, s, config.max_qubits));
    Matrix phased = es.eigenvectors();
    for (Index c = 0; c < dim; ++c) {
      phased.col(c) *= std::polar(1.0, -theta * es.eigenvalues()(c));
    }
    slices->push_back(phased * es.eigenvectors().adjoint());
  }

  QuantumMap map(dim);
  map.slice_unitaries_ = std::move(slices);
  map.slice_kraus_ = std::make_shared<const noise::KrausSet>(
      noise::kraus_for(noise_model, p_slice));
  map.sites_ = spec.length();
  return map;
}

Matrix QuantumMap::apply(const Matrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw validation_error("QuantumMap: dimension mismatch");
  }
  if (unitary_) {
    return (*unitary_) * rho * unitary_->adjoint();
  }
  if (fn_) {
    Matrix out = fn_(rho);
    if (out.rows() != dim_ || out.cols() != dim_) {
      throw validation_error("QuantumMap: custom map changed the dimension");
    }
    return out;
  }
  Matrix state = rho;
  for (const Matrix& u : *slice_unitaries_) {
    state = (u * state * u.adjoint()).eval();
    for (int site = 0; site < sites_; ++site) {
      noise::apply_channel_in_place(state, *slice_kraus_, site);
    }
  }
  return state;
}

const Matrix* QuantumMap::composed_unitary() const {
  return unitary_ ? unitary_.get() : nullptr;
}

}  // namespace ftbench::dynamics
