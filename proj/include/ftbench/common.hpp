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

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftbench {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Largest chain length materialized as a dense 2^L problem unless the
/// caller raises the limit explicitly.
inline constexpr int kDefaultMaxQubits = 14;

/// Dimensionless phase accumulated per (GHz * microsecond): energies are
/// stored divided by 2*pi*hbar, so exp(-i H t / hbar) = exp(-i 2pi 1e3 H_GHz t_us).
inline constexpr double kPhasePerGhzUs = 2.0 * M_PI * 1.0e3;

// ----------------------------------------------------------------------------
// Error classes, one per CLI exit-code family.
// ----------------------------------------------------------------------------

/// Bad argument values, malformed inputs, broken invariants.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Problem size exceeds the configured dense-simulation limit.
class capacity_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem and stream failures.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A degenerate ground space where the protocol needs a unique state.
class degeneracy_error : public validation_error {
 public:
  using validation_error::validation_error;
};

/// Self-avoiding-walk generation ran out of restarts.
class embedding_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws capacity_error unless 2^length fits the dense limit.
void ensure_capacity(int length, int max_qubits = kDefaultMaxQubits);

// ----------------------------------------------------------------------------
// Numeric helpers
// ----------------------------------------------------------------------------

/// Neumaier compensated accumulator for long probability/energy sums.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Max-norm of a complex matrix (largest entry modulus).
double max_abs(const Matrix& m);

/// ||m - m^dagger||_max
double hermiticity_defect(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol = 1e-10);

// ----------------------------------------------------------------------------
// Deterministic sampling
// ----------------------------------------------------------------------------

/// Uniform double in [0, 1) from the top 53 bits of the generator output.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// One multinomial draw of n items over the given weights, via sequential
/// conditional binomials.  Weights need not be normalized.
std::vector<long long> multinomial_counts(const std::vector<double>& weights,
                                          long long n, std::mt19937_64& rng);

}  // namespace ftbench
