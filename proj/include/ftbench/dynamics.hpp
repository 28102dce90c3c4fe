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

#include <functional>
#include <memory>

#include "ftbench/model.hpp"
#include "ftbench/noise.hpp"

namespace ftbench::dynamics {

struct EvolutionConfig {
  int steps = 2000;  // piecewise-constant slices, midpoint rule
  int max_qubits = kDefaultMaxQubits;
};

/// H(s) supplier for a fixed chain; s is normalized time in [0, 1].
using HamiltonianFn = std::function<Matrix(double)>;

/// Propagates a statevector through `steps` slices of exp(-i 2pi 1e3 H(s_k) dt)
/// with midpoints s_k = (k + 1/2) / steps.  Exact per slice via Hermitian
/// eigendecomposition, so a time-independent H reproduces the full matrix
/// exponential at any step count.
Vector evolve_statevector(Vector psi, const HamiltonianFn& h_of_s,
                          double tau_us, int steps);

/// Unitary anneal of a pure or mixed state over schedule.tau_us().
model::QuantumState evolve_unitary(const model::QuantumState& state,
                                   const model::ChainSpec& spec,
                                   const model::AnnealSchedule& schedule,
                                   const EvolutionConfig& config = {});

/// Noisy anneal: per slice, the slice unitary followed by one channel
/// application on every site (first-order splitting).  The per-slice event
/// probability is rate * dt, capped at 1 with a warning on stderr.
Matrix evolve_channel(const Matrix& rho, const model::ChainSpec& spec,
                      const model::AnnealSchedule& schedule,
                      const noise::NoiseModel& noise_model,
                      const EvolutionConfig& config = {});

/// Slice eigendecompositions cached for a fixed (chain, profile, steps); the
/// anneal time only scales the per-slice phases, so one table serves a whole
/// tau sweep.
class PropagatorTable {
 public:
  PropagatorTable(const model::ChainSpec& spec,
                  const model::AnnealSchedule& schedule,
                  const EvolutionConfig& config = {});

  Vector propagate(Vector psi, double tau_us) const;
  int steps() const { return static_cast<int>(slices_.size()); }

 private:
  struct Slice {
    RealVector eigenvalues;
    Matrix eigenvectors;
  };
  std::vector<Slice> slices_;
};

/// A trace-preserving linear map on matrices: per-slice unitaries optionally
/// interleaved with a Kraus channel on every site.  apply() is linear and
/// performs no state validation, so it can act on projected or weighted
/// matrices inside the measurement pipeline.
class QuantumMap {
 public:
  using ApplyFn = std::function<Matrix(const Matrix&)>;

  static QuantumMap identity(Index dim);

  /// Composes all slice unitaries once; apply() is then two products.
  static QuantumMap unitary(const model::ChainSpec& spec,
                            const model::AnnealSchedule& schedule,
                            const EvolutionConfig& config = {});

  static QuantumMap channel(const model::ChainSpec& spec,
                            const model::AnnealSchedule& schedule,
                            const noise::NoiseModel& noise_model,
                            const EvolutionConfig& config = {});

  static QuantumMap from_unitary_matrix(Matrix u);

  /// Arbitrary linear map, for tests and synthetic channels.
  static QuantumMap from_function(Index dim, ApplyFn fn);

  Matrix apply(const Matrix& rho) const;
  Index dim() const { return dim_; }

  /// Composed unitary when this map is unitary, nullptr otherwise.
  const Matrix* composed_unitary() const;

 private:
  QuantumMap(Index dim) : dim_(dim) {}

  Index dim_ = 0;
  std::shared_ptr<const Matrix> unitary_;           // unitary mode
  ApplyFn fn_;                                      // function mode
  // channel mode:
  std::shared_ptr<const std::vector<Matrix>> slice_unitaries_;
  std::shared_ptr<const noise::KrausSet> slice_kraus_;
  int sites_ = 0;
};

}  // namespace ftbench::dynamics
