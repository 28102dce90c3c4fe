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

#include "ftbench/model.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ftbench::model {

namespace {

void require_finite(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw validation_error(std::string(what) + " must be finite");
    }
  }
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

// ----------------------------------------------------------------------------
// ChainSpec
// ----------------------------------------------------------------------------

ChainSpec::ChainSpec(int length, std::vector<double> couplings,
                     std::vector<double> fields)
    : length_(length),
      couplings_(std::move(couplings)),
      fields_(std::move(fields)) {
  if (length_ < 2) {
    throw validation_error("chain length must be at least 2");
  }
  if (fields_.empty()) {
    fields_.assign(static_cast<std::size_t>(length_), 0.0);
  }
  if (couplings_.size() != static_cast<std::size_t>(length_ - 1)) {
    throw validation_error("expected " + std::to_string(length_ - 1) +
                           " couplings, got " +
                           std::to_string(couplings_.size()));
  }
  if (fields_.size() != static_cast<std::size_t>(length_)) {
    throw validation_error("expected " + std::to_string(length_) +
                           " fields, got " + std::to_string(fields_.size()));
  }
  require_finite(couplings_, "couplings");
  require_finite(fields_, "fields");
  if (std::all_of(couplings_.begin(), couplings_.end(),
                  [](double j) { return j == 0.0; })) {
    throw validation_error("at least one coupling must be nonzero");
  }
}

ChainSpec ChainSpec::uniform(int length, double coupling) {
  if (length < 2) {
    throw validation_error("chain length must be at least 2");
  }
  return ChainSpec(length,
                   std::vector<double>(static_cast<std::size_t>(length - 1),
                                       coupling));
}

bool ChainSpec::uniform_coupling() const {
  return std::all_of(couplings_.begin(), couplings_.end(),
                     [&](double j) { return j == couplings_.front(); });
}

// ----------------------------------------------------------------------------
// AnnealSchedule
// ----------------------------------------------------------------------------

AnnealSchedule::AnnealSchedule(double tau_us, std::vector<ScheduleKnot> knots)
    : tau_us_(tau_us), knots_(std::move(knots)) {
  if (!(tau_us_ > 0.0) || !std::isfinite(tau_us_)) {
    throw validation_error("anneal time must be positive and finite");
  }
  if (knots_.size() < 2) {
    throw validation_error("schedule needs at least two knots");
  }
  if (knots_.front().s != 0.0 || knots_.back().s != 1.0) {
    throw validation_error("schedule knots must start at s=0 and end at s=1");
  }
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    const auto& k = knots_[i];
    if (!std::isfinite(k.s) || !std::isfinite(k.g_ghz) ||
        !std::isfinite(k.delta_ghz)) {
      throw validation_error("schedule knots must be finite");
    }
    if (k.g_ghz < 0.0 || k.delta_ghz < 0.0) {
      throw validation_error("schedule amplitudes must be nonnegative");
    }
    if (i > 0 && !(knots_[i - 1].s < k.s)) {
      throw validation_error("schedule knots must be strictly increasing in s");
    }
  }
  if (!(knots_.front().g_ghz > knots_.front().delta_ghz)) {
    throw validation_error("schedule must start transverse-dominated: g(0) > Delta(0)");
  }
  if (!(knots_.back().delta_ghz > knots_.back().g_ghz)) {
    throw validation_error("schedule must end coupling-dominated: Delta(1) > g(1)");
  }
}

AnnealSchedule AnnealSchedule::linear_default(double tau_us) {
  return AnnealSchedule(tau_us, {{0.0, 5.0, 0.01}, {1.0, 0.01, 5.0}});
}

AnnealSchedule AnnealSchedule::from_csv_stream(std::istream& in, double tau_us,
                                               const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw validation_error(name + ": empty schedule file");
  }
  std::string header = trim(line);
  if (header != "s,g_ghz,delta_ghz") {
    throw validation_error(name + ":1: expected header 's,g_ghz,delta_ghz'");
  }
  std::vector<ScheduleKnot> knots;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string row = trim(line);
    if (row.empty()) continue;
    std::istringstream cells(row);
    std::string cell;
    double values[3];
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(cells, cell, ',')) {
        throw validation_error(name + ":" + std::to_string(lineno) +
                               ": expected 3 columns");
      }
      try {
        std::size_t used = 0;
        values[i] = std::stod(trim(cell), &used);
        if (used != trim(cell).size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw validation_error(name + ":" + std::to_string(lineno) +
                               ": bad number '" + trim(cell) + "'");
      }
    }
    if (std::getline(cells, cell, ',')) {
      throw validation_error(name + ":" + std::to_string(lineno) +
                             ": expected exactly 3 columns");
    }
    knots.push_back({values[0], values[1], values[2]});
  }
  return AnnealSchedule(tau_us, std::move(knots));
}

AnnealSchedule AnnealSchedule::from_csv(const std::filesystem::path& path,
                                        double tau_us) {
  std::ifstream in(path);
  if (!in) {
    throw io_error("cannot open schedule file " + path.string());
  }
  return from_csv_stream(in, tau_us, path.string());
}

double AnnealSchedule::interpolate(double s,
                                   double ScheduleKnot::*field) const {
  if (s < 0.0 || s > 1.0) {
    throw validation_error("normalized time s must lie in [0, 1]");
  }
  auto hi = std::lower_bound(
      knots_.begin(), knots_.end(), s,
      [](const ScheduleKnot& k, double value) { return k.s < value; });
  if (hi == knots_.begin()) return knots_.front().*field;
  if (hi == knots_.end()) return knots_.back().*field;
  const auto lo = hi - 1;
  const double w = (s - lo->s) / (hi->s - lo->s);
  return (1.0 - w) * (*lo).*field + w * (*hi).*field;
}

double AnnealSchedule::g(double s) const { return interpolate(s, &ScheduleKnot::g_ghz); }
double AnnealSchedule::delta(double s) const { return interpolate(s, &ScheduleKnot::delta_ghz); }

AnnealSchedule AnnealSchedule::with_tau(double tau_us) const {
  return AnnealSchedule(tau_us, knots_);
}

// ----------------------------------------------------------------------------
// Observable
// ----------------------------------------------------------------------------

long long EigenPair::rank() const {
  return std::llround(projector.trace().real());
}

Observable::Observable(Index dim, std::vector<EigenPair> pairs, double tol)
    : dim_(dim), pairs_(std::move(pairs)) {
  if (dim_ < 1) throw validation_error("observable dimension must be positive");
  if (pairs_.empty()) throw validation_error("observable needs eigenpairs");

  std::sort(pairs_.begin(), pairs_.end(),
            [](const EigenPair& a, const EigenPair& b) { return a.value > b.value; });

  Matrix sum = Matrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const auto& p = pairs_[i];
    if (p.projector.rows() != dim_ || p.projector.cols() != dim_) {
      throw validation_error("projector dimension mismatch");
    }
    if (!std::isfinite(p.value)) {
      throw validation_error("eigenvalue must be finite");
    }
    if (i > 0 && pairs_[i - 1].value == p.value) {
      throw validation_error("eigenvalues must be distinct");
    }
    if (hermiticity_defect(p.projector) > tol) {
      throw validation_error("projector is not Hermitian");
    }
    if (max_abs(p.projector * p.projector - p.projector) > tol) {
      throw validation_error("projector is not idempotent");
    }
    sum += p.projector;
  }
  // Orthogonality between distinct projectors follows from idempotency plus
  // completeness, which is what we check directly.
  if (max_abs(sum - Matrix::Identity(dim_, dim_)) > tol) {
    throw validation_error("projectors do not sum to the identity");
  }
}

std::vector<double> Observable::eigenvalues() const {
  std::vector<double> out;
  out.reserve(pairs_.size());
  for (const auto& p : pairs_) out.push_back(p.value);
  return out;
}

Matrix Observable::matrix() const {
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const auto& p : pairs_) out += p.value * p.projector;
  return out;
}

Matrix Observable::exp_weighted(double scale) const {
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const auto& p : pairs_) out += std::exp(scale * p.value) * p.projector;
  return out;
}

// ----------------------------------------------------------------------------
// QuantumState
// ----------------------------------------------------------------------------

QuantumState QuantumState::pure(Vector psi, double tol) {
  if (psi.size() == 0) throw validation_error("empty statevector");
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > tol) {
    throw validation_error("statevector is not normalized");
  }
  return QuantumState(std::move(psi));
}

QuantumState QuantumState::mixed(Matrix rho, double tol) {
  if (rho.rows() == 0 || rho.rows() != rho.cols()) {
    throw validation_error("density matrix must be square and nonempty");
  }
  if (hermiticity_defect(rho) > tol) {
    throw validation_error("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > tol ||
      std::abs(rho.trace().imag()) > tol) {
    throw validation_error("density matrix trace must be 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw validation_error("density matrix has a negative eigenvalue");
  }
  return QuantumState(std::move(rho));
}

Index QuantumState::dim() const {
  return is_pure() ? std::get<Vector>(state_).size()
                   : std::get<Matrix>(state_).rows();
}

const Vector& QuantumState::statevector() const {
  if (!is_pure()) throw validation_error("state is not pure");
  return std::get<Vector>(state_);
}

const Matrix& QuantumState::density_matrix() const {
  if (is_pure()) throw validation_error("state is not a density matrix");
  return std::get<Matrix>(state_);
}

Matrix QuantumState::to_density() const {
  if (is_pure()) {
    const Vector& psi = std::get<Vector>(state_);
    return psi * psi.adjoint();
  }
  return std::get<Matrix>(state_);
}

// ----------------------------------------------------------------------------
// Hamiltonian and observables
// ----------------------------------------------------------------------------

Matrix build_hamiltonian(const ChainSpec& spec, const AnnealSchedule& schedule,
                         double s, int max_qubits) {
  ensure_capacity(spec.length(), max_qubits);
  const int length = spec.length();
  const Index dim = Index(1) << length;
  const double g = schedule.g(s);
  const double delta = schedule.delta(s);

  Matrix h = Matrix::Zero(dim, dim);
  for (Index idx = 0; idx < dim; ++idx) {
    const auto bits = static_cast<std::uint64_t>(idx);
    double diag = 0.0;
    for (int n = 0; n + 1 < length; ++n) {
      diag += spec.couplings()[static_cast<std::size_t>(n)] *
              spin_of(bits, n) * spin_of(bits, n + 1);
    }
    for (int n = 0; n < length; ++n) {
      diag += spec.fields()[static_cast<std::size_t>(n)] * spin_of(bits, n);
    }
    h(idx, idx) = -delta * diag;
    for (int n = 0; n < length; ++n) {
      h(idx ^ (Index(1) << n), idx) += -g;
    }
  }
  return h;
}

Observable build_omega_initial(int length, int max_qubits) {
  if (length < 2) throw validation_error("chain length must be at least 2");
  ensure_capacity(length, max_qubits);
  const Index dim = Index(1) << length;

  // Eigenbasis is the x-product basis.  String b (bit set = spin along -x)
  // maps to the column vector v_b[z] = (-1)^{popcount(z & b)} / sqrt(dim),
  // so each projector is W_m W_m^T over the strings with popcount m.
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<std::vector<Index>> strings_by_weight(
      static_cast<std::size_t>(length) + 1);
  for (Index b = 0; b < dim; ++b) {
    strings_by_weight[static_cast<std::size_t>(
                          std::popcount(static_cast<std::uint64_t>(b)))]
        .push_back(b);
  }

  std::vector<EigenPair> pairs;
  pairs.reserve(strings_by_weight.size());
  for (int m = 0; m <= length; ++m) {
    const auto& strings = strings_by_weight[static_cast<std::size_t>(m)];
    RealMatrix w(dim, static_cast<Index>(strings.size()));
    for (std::size_t col = 0; col < strings.size(); ++col) {
      const auto b = static_cast<std::uint64_t>(strings[col]);
      for (Index z = 0; z < dim; ++z) {
        const int parity =
            std::popcount(static_cast<std::uint64_t>(z) & b) & 1;
        w(z, static_cast<Index>(col)) = parity ? -scale : scale;
      }
    }
    RealMatrix projector = w * w.transpose();
    pairs.push_back({static_cast<double>(length - 1 - 2 * m),
                     projector.cast<Complex>()});
  }
  return Observable(dim, std::move(pairs));
}

namespace {

Observable diagonal_bond_observable(int length, int max_qubits,
                                    const ChainSpec* spec) {
  if (length < 2) throw validation_error("chain length must be at least 2");
  ensure_capacity(length, max_qubits);
  const Index dim = Index(1) << length;

  // Broken-bond count k = 0..L-1 indexes the L eigenvalue classes.
  std::vector<std::vector<Index>> states_by_value;
  states_by_value.resize(static_cast<std::size_t>(length));
  for (Index z = 0; z < dim; ++z) {
    const auto bits = static_cast<std::uint64_t>(z);
    const long long value = spec ? adjusted_bond_energy(bits, *spec)
                                 : bond_energy(bits, length);
    const auto k = static_cast<std::size_t>((length - 1 - value) / 2);
    states_by_value[k].push_back(z);
  }

  std::vector<EigenPair> pairs;
  for (int k = 0; k <= length - 1; ++k) {
    Matrix projector = Matrix::Zero(dim, dim);
    for (Index z : states_by_value[static_cast<std::size_t>(k)]) {
      projector(z, z) = 1.0;
    }
    pairs.push_back({static_cast<double>(length - 1 - 2 * k), std::move(projector)});
  }
  return Observable(dim, std::move(pairs));
}

}  // namespace

Observable build_omega_final(int length, int max_qubits) {
  return diagonal_bond_observable(length, max_qubits, nullptr);
}

Observable build_omega_final(const ChainSpec& spec, int max_qubits) {
  return diagonal_bond_observable(spec.length(), max_qubits, &spec);
}

QuantumState ground_state(const Matrix& hamiltonian, double gap_tol) {
  if (!is_hermitian(hamiltonian, 1e-10 * std::max(1.0, max_abs(hamiltonian)))) {
    throw validation_error("ground_state: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian);
  const auto& values = es.eigenvalues();
  if (values.size() > 1 && values(1) - values(0) < gap_tol) {
    throw degeneracy_error(
        "ground space is degenerate: lowest eigenvalues " +
        std::to_string(values(0)) + " and " + std::to_string(values(1)) +
        " are closer than the gap tolerance");
  }
  Vector psi = es.eigenvectors().col(0);
  psi /= psi.norm();
  return QuantumState::pure(std::move(psi));
}

Observable spectral_decompose(const Matrix& hermitian, double cluster_tol) {
  if (hermitian.rows() != hermitian.cols() || hermitian.rows() == 0) {
    throw validation_error("spectral_decompose: matrix must be square");
  }
  const double scale = std::max(1.0, max_abs(hermitian));
  if (hermiticity_defect(hermitian) > 1e-10 * scale) {
    throw validation_error("spectral_decompose: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
  const auto& values = es.eigenvalues();
  const auto& vectors = es.eigenvectors();
  const Index dim = hermitian.rows();

  const double spread = std::max(std::abs(values(0)),
                                 std::abs(values(values.size() - 1)));
  const double tol = cluster_tol * std::max(1.0, spread);

  std::vector<EigenPair> pairs;
  Index start = 0;
  while (start < dim) {
    Index stop = start + 1;
    while (stop < dim && values(stop) - values(stop - 1) <= tol) ++stop;
    const auto block = vectors.middleCols(start, stop - start);
    double mean = 0.0;
    for (Index i = start; i < stop; ++i) mean += values(i);
    mean /= static_cast<double>(stop - start);
    pairs.push_back({mean, block * block.adjoint()});
    start = stop;
  }
  return Observable(dim, std::move(pairs));
}

// ----------------------------------------------------------------------------
// Classical readout helpers
// ----------------------------------------------------------------------------

long long bond_energy(std::uint64_t index, int length) {
  long long total = 0;
  for (int n = 0; n + 1 < length; ++n) {
    total += spin_of(index, n) * spin_of(index, n + 1);
  }
  return total;
}

long long adjusted_bond_energy(std::uint64_t index, const ChainSpec& spec) {
  long long total = 0;
  for (int n = 0; n + 1 < spec.length(); ++n) {
    total += spec.coupling_sign(n) * spin_of(index, n) * spin_of(index, n + 1);
  }
  return total;
}

int kink_count(std::uint64_t index, const ChainSpec& spec) {
  int kinks = 0;
  for (int n = 0; n + 1 < spec.length(); ++n) {
    if (spec.coupling_sign(n) * spin_of(index, n) * spin_of(index, n + 1) < 0) {
      ++kinks;
    }
  }
  return kinks;
}

}  // namespace ftbench::model
