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

#include "ftbench/common.hpp"

namespace ftbench {

void ensure_capacity(int length, int max_qubits) {
  if (length > max_qubits) {
    throw capacity_error("chain length " + std::to_string(length) +
                         " exceeds the dense-simulation limit of " +
                         std::to_string(max_qubits) + " qubits");
  }
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

std::vector<long long> multinomial_counts(const std::vector<double>& weights,
                                          long long n, std::mt19937_64& rng) {
  if (weights.empty()) {
    throw validation_error("multinomial_counts: empty weight vector");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw validation_error("multinomial_counts: weights must be finite and >= 0");
    }
    total += w;
  }
  if (total <= 0.0) {
    throw validation_error("multinomial_counts: weights sum to zero");
  }

  std::vector<long long> counts(weights.size(), 0);
  long long remaining = n;
  double mass_left = total;
  for (std::size_t i = 0; i + 1 < weights.size() && remaining > 0; ++i) {
    const double p = std::clamp(weights[i] / mass_left, 0.0, 1.0);
    std::binomial_distribution<long long> binom(remaining, p);
    const long long c = binom(rng);
    counts[i] = c;
    remaining -= c;
    mass_left -= weights[i];
    if (mass_left <= 0.0) break;
  }
  counts.back() += remaining;
  return counts;
}

}  // namespace ftbench
