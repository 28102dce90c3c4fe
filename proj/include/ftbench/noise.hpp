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

#include <string>

#include "ftbench/common.hpp"

namespace ftbench::noise {

enum class NoiseKind { none, dephasing, depolarizing, amplitude_damping, thermal };

/// Hom, single-qubit noise applied uniformly across the chain.  `rate` is
/// events per microsecond; `excitation` only matters for thermal noise and
/// mixes decay toward spin-up (0) with decay toward spin-down (1).
struct NoiseModel {
  NoiseKind kind = NoiseKind::none;
  double rate = 0.0;
  double excitation = 0.0;

  NoiseModel() = default;
  NoiseModel(NoiseKind kind, double rate, double excitation = 0.0);

  /// Parses the CLI syntax `kind:rate[:excitation]`, e.g. `dephasing:0.02`
  /// or `thermal:0.05:0.1`.  `none` stands alone.
  static NoiseModel parse(const std::string& text);

  bool enabled() const { return kind != NoiseKind::none && rate > 0.0; }
  std::string describe() const;
};

/// Single-qubit Kraus operators, trace-preserving to 1e-12 by construction.
class KrausSet {
 public:
  explicit KrausSet(std::vector<Eigen::Matrix2cd> ops, double tol = 1e-12);

  static KrausSet identity();

  const std::vector<Eigen::Matrix2cd>& ops() const { return ops_; }

 private:
  std::vector<Eigen::Matrix2cd> ops_;
};

struct UnitalityReport {
  bool unital = false;
  double deviation = 0.0;  // ||sum_k K K^dagger - I||_max
};

/// Kraus operators realizing one application of the channel with event
/// probability `p_slice`.
KrausSet kraus_for(const NoiseModel& model, double p_slice);

UnitalityReport is_unital(const KrausSet& kraus, double tol = 1e-12);

/// rho -> sum_k K^(site) rho K^(site)dagger with K acting on one site.
Matrix apply_channel(const Matrix& rho, const KrausSet& kraus, int site);

/// In-place variant used by the slice loop.
void apply_channel_in_place(Matrix& rho, const KrausSet& kraus, int site);

}  // namespace ftbench::noise
