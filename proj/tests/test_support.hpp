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

#include <random>

#include "ftbench/common.hpp"

namespace ftbench::test {

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// op on `site`, identity elsewhere, with site 0 the least significant bit.
inline Matrix site_operator(const Matrix& op, int site, int length) {
  Matrix out = Matrix::Identity(1, 1);
  for (int n = length - 1; n >= 0; --n) {
    out = kron(out, n == site ? op : Matrix::Identity(2, 2));
  }
  return out;
}

inline Matrix random_density(Index dim, std::mt19937_64& rng) {
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

inline Vector random_statevector(Index dim, std::mt19937_64& rng) {
  Vector psi(dim);
  for (Index i = 0; i < dim; ++i) {
    psi(i) = Complex(uniform_unit(rng) - 0.5, uniform_unit(rng) - 0.5);
  }
  psi /= psi.norm();
  return psi;
}

}  // namespace ftbench::test
