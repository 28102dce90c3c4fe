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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <variant>

#include "ftbench/common.hpp"

namespace ftbench::model {

// ----------------------------------------------------------------------------
// ChainSpec: the Ising chain under test.
// ----------------------------------------------------------------------------

/// An open chain of `length` spins with `length - 1` couplings and optional
/// per-site longitudinal fields (all zero by default).
class ChainSpec {
 public:
  ChainSpec(int length, std::vector<double> couplings,
            std::vector<double> fields = {});

  /// Chain with every coupling equal to `coupling` and zero fields.
  static ChainSpec uniform(int length, double coupling);

  int length() const { return length_; }
  const std::vector<double>& couplings() const { return couplings_; }
  const std::vector<double>& fields() const { return fields_; }

  /// +1/-1 sign of coupling i; zero couplings count as +1 so that the
  /// bond-order observable keeps its integer spectrum.
  int coupling_sign(int bond) const {
    return couplings_[static_cast<std::size_t>(bond)] < 0.0 ? -1 : 1;
  }

  /// True when all couplings have the same value.
  bool uniform_coupling() const;

 private:
  int length_;
  std::vector<double> couplings_;
  std::vector<double> fields_;
};

// ----------------------------------------------------------------------------
// AnnealSchedule: g(s), Delta(s) amplitude pair over normalized time.
// ----------------------------------------------------------------------------

struct ScheduleKnot {
  double s = 0.0;          // normalized time in [0, 1]
  double g_ghz = 0.0;      // transverse amplitude
  double delta_ghz = 0.0;  // problem amplitude
};

/// Piecewise-linear annealing profile: transverse-dominated at s = 0,
/// coupling-dominated at s = 1, with the total anneal time in microseconds.
class AnnealSchedule {
 public:
  AnnealSchedule(double tau_us, std::vector<ScheduleKnot> knots);

  /// Built-in profile: g from 5 GHz to 0.01 GHz, Delta from 0.01 GHz to
  /// 5 GHz, both linear in s.
  static AnnealSchedule linear_default(double tau_us);

  /// Loads knots from a CSV with header `s,g_ghz,delta_ghz`.
  static AnnealSchedule from_csv(const std::filesystem::path& path,
                                 double tau_us);
  static AnnealSchedule from_csv_stream(std::istream& in, double tau_us,
                                        const std::string& name);

  double g(double s) const;
  double delta(double s) const;
  double tau_us() const { return tau_us_; }
  const std::vector<ScheduleKnot>& knots() const { return knots_; }

  /// Same profile, different anneal time.
  AnnealSchedule with_tau(double tau_us) const;

 private:
  double interpolate(double s, double ScheduleKnot::*field) const;

  double tau_us_;
  std::vector<ScheduleKnot> knots_;
};

// ----------------------------------------------------------------------------
// Observable: spectral decomposition with degenerate projectors.
// ----------------------------------------------------------------------------

struct EigenPair {
  double value = 0.0;
  Matrix projector;  // Hermitian idempotent; rank may exceed one

  long long rank() const;
};

/// A Hermitian operator stored as (eigenvalue, projector) pairs with
/// distinct eigenvalues, sorted descending by eigenvalue.
class Observable {
 public:
  Observable(Index dim, std::vector<EigenPair> pairs, double tol = 1e-10);

  Index dim() const { return dim_; }
  const std::vector<EigenPair>& pairs() const { return pairs_; }

  std::vector<double> eigenvalues() const;

  /// Dense matrix sum_m w_m P_m.
  Matrix matrix() const;

  /// Dense matrix sum_m exp(scale * w_m) P_m; never exponentiates a matrix.
  Matrix exp_weighted(double scale) const;

 private:
  Index dim_;
  std::vector<EigenPair> pairs_;
};

// ----------------------------------------------------------------------------
// QuantumState: pure statevector or density matrix.
// ----------------------------------------------------------------------------

class QuantumState {
 public:
  static QuantumState pure(Vector psi, double tol = 1e-10);
  static QuantumState mixed(Matrix rho, double tol = 1e-10);

  bool is_pure() const { return std::holds_alternative<Vector>(state_); }
  Index dim() const;

  const Vector& statevector() const;       // throws when mixed
  const Matrix& density_matrix() const;    // throws when pure
  Matrix to_density() const;               // psi psi^dagger or rho

 private:
  explicit QuantumState(Vector psi) : state_(std::move(psi)) {}
  explicit QuantumState(Matrix rho) : state_(std::move(rho)) {}

  std::variant<Vector, Matrix> state_;
};

// ----------------------------------------------------------------------------
// Operations
// ----------------------------------------------------------------------------

/// Dense H(s) in GHz: -g(s) sum_i sx_i - Delta(s) sum_i J_i sz_i sz_{i+1}
/// - Delta(s) sum_i h_i sz_i.  Basis: site n is bit n of the index, bit 0
/// means spin up (sz = +1).
Matrix build_hamiltonian(const ChainSpec& spec, const AnnealSchedule& schedule,
                         double s, int max_qubits = kDefaultMaxQubits);

/// Initial-time observable sum_n sx_n - I.  Eigenvalues L - 1 - 2m with
/// projector rank C(L, m), m = 0..L.
Observable build_omega_initial(int length, int max_qubits = kDefaultMaxQubits);

/// Final-time bond observable sum_n sz_n sz_{n+1}.  Eigenvalues L - 1 - 2k
/// with projector rank 2 C(L-1, k), k = 0..L-1.
Observable build_omega_final(int length, int max_qubits = kDefaultMaxQubits);

/// Sign-adjusted bond observable sum_n sign(J_n) sz_n sz_{n+1}: measures the
/// number of bonds violating the coupling's ground-state order, so its value
/// on any classical ground state of the problem Hamiltonian is L - 1 for
/// either coupling sign.  Equals build_omega_final(L) for all-positive J.
Observable build_omega_final(const ChainSpec& spec,
                             int max_qubits = kDefaultMaxQubits);

/// Normalized ground state of a Hermitian matrix.  Raises degeneracy_error
/// when the lowest two eigenvalues are closer than `gap_tol`.
QuantumState ground_state(const Matrix& hamiltonian, double gap_tol = 1e-9);

/// Spectral decomposition with eigenvalues clustered when closer than
/// `cluster_tol` relative to the spectral radius.
Observable spectral_decompose(const Matrix& hermitian,
                              double cluster_tol = 1e-8);

// ----------------------------------------------------------------------------
// Classical readout helpers (diagonal observables on z-basis strings)
// ----------------------------------------------------------------------------

/// sz value of site `site` in basis state `index`: +1 for bit 0.
inline int spin_of(std::uint64_t index, int site) {
  return (index >> site) & 1ULL ? -1 : 1;
}

/// Bond sum sum_n s_n s_{n+1} of a basis state.
long long bond_energy(std::uint64_t index, int length);

/// Bond sum weighted by coupling signs: sum_n sign(J_n) s_n s_{n+1}.
long long adjusted_bond_energy(std::uint64_t index, const ChainSpec& spec);

/// Number of bonds with sign(J_n) s_n s_{n+1} = -1.
int kink_count(std::uint64_t index, const ChainSpec& spec);

}  // namespace ftbench::model
