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

#include "ftbench/noise.hpp"

#include <cmath>
#include <sstream>

namespace ftbench::noise {

namespace {

const char* kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::none: return "none";
    case NoiseKind::dephasing: return "dephasing";
    case NoiseKind::depolarizing: return "depolarizing";
    case NoiseKind::amplitude_damping: return "amplitude_damping";
    case NoiseKind::thermal: return "thermal";
  }
  return "unknown";
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw validation_error("bad " + what + " '" + text + "' in noise spec");
  }
}

}  // namespace

NoiseModel::NoiseModel(NoiseKind kind, double rate, double excitation)
    : kind(kind), rate(rate), excitation(excitation) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw validation_error("noise rate must be >= 0");
  }
  if (kind == NoiseKind::thermal &&
      (!(excitation >= 0.0) || !(excitation <= 1.0))) {
    throw validation_error("thermal excitation fraction must lie in [0, 1]");
  }
}

NoiseModel NoiseModel::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.empty()) throw validation_error("empty noise spec");

  const std::string& name = parts[0];
  if (name == "none") {
    if (parts.size() > 1) throw validation_error("'none' takes no parameters");
    return NoiseModel();
  }

  NoiseKind kind;
  if (name == "dephasing") kind = NoiseKind::dephasing;
  else if (name == "depolarizing") kind = NoiseKind::depolarizing;
  else if (name == "amplitude_damping") kind = NoiseKind::amplitude_damping;
  else if (name == "thermal") kind = NoiseKind::thermal;
  else throw validation_error("unknown noise kind '" + name + "'");

  if (parts.size() < 2) {
    throw validation_error("noise spec '" + name + "' needs a rate, e.g. '" +
                           name + ":0.05'");
  }
  const double rate = parse_double(parts[1], "rate");
  double excitation = 0.0;
  if (kind == NoiseKind::thermal) {
    if (parts.size() == 3) excitation = parse_double(parts[2], "excitation");
    else if (parts.size() != 2) throw validation_error("too many fields in noise spec");
  } else if (parts.size() > 2) {
    throw validation_error("only thermal noise takes an excitation fraction");
  }
  return NoiseModel(kind, rate, excitation);
}

std::string NoiseModel::describe() const {
  if (!enabled()) return "none";
  std::ostringstream out;
  out << kind_name(kind) << ":" << rate;
  if (kind == NoiseKind::thermal) out << ":" << excitation;
  return out.str();
}

KrausSet::KrausSet(std::vector<Eigen::Matrix2cd> ops, double tol)
    : ops_(std::move(ops)) {
  if (ops_.empty()) throw validation_error("Kraus set is empty");
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
  for (const auto& k : ops_) sum += k.adjoint() * k;
  const double defect =
      (sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (defect > tol) {
    throw validation_error("Kraus set is not trace-preserving (defect " +
                           std::to_string(defect) + ")");
  }
}

KrausSet KrausSet::identity() {
  return KrausSet({Eigen::Matrix2cd::Identity()});
}

KrausSet kraus_for(const NoiseModel& model, double p_slice) {
  if (!(p_slice >= 0.0) || !(p_slice <= 1.0)) {
    throw validation_error("per-slice probability must lie in [0, 1]");
  }
  const double p = p_slice;
  if (model.kind == NoiseKind::none || p == 0.0) {
    return KrausSet::identity();
  }

  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();

  switch (model.kind) {
    case NoiseKind::dephasing:
      return KrausSet({std::sqrt(1.0 - p) * id, std::sqrt(p) * sz});
    case NoiseKind::depolarizing:
      return KrausSet({std::sqrt(1.0 - p) * id, std::sqrt(p / 3.0) * sx,
                       std::sqrt(p / 3.0) * sy, std::sqrt(p / 3.0) * sz});
    case NoiseKind::amplitude_damping: {
      // Decay toward spin-up (basis state 0).
      Eigen::Matrix2cd k0, k1;
      k0 << 1, 0, 0, std::sqrt(1.0 - p);
      k1 << 0, std::sqrt(p), 0, 0;
      return KrausSet({k0, k1});
    }
    case NoiseKind::thermal: {
      // Generalized amplitude damping: weight (1 - f) on decay toward
      // spin-up, weight f on decay toward spin-down.
      const double f = model.excitation;
      Eigen::Matrix2cd d0, d1, u0, u1;
      d0 << 1, 0, 0, std::sqrt(1.0 - p);
      d1 << 0, std::sqrt(p), 0, 0;
      u0 << std::sqrt(1.0 - p), 0, 0, 1;
      u1 << 0, 0, std::sqrt(p), 0;
      std::vector<Eigen::Matrix2cd> ops;
      if (f < 1.0) {
        ops.push_back(std::sqrt(1.0 - f) * d0);
        ops.push_back(std::sqrt(1.0 - f) * d1);
      }
      if (f > 0.0) {
        ops.push_back(std::sqrt(f) * u0);
        ops.push_back(std::sqrt(f) * u1);
      }
      return KrausSet(std::move(ops));
    }
    case NoiseKind::none: break;
  }
  return KrausSet::identity();
}

UnitalityReport is_unital(const KrausSet& kraus, double tol) {
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
  for (const auto& k : kraus.ops()) sum += k * k.adjoint();
  const double deviation =
      (sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  return {deviation <= tol, deviation};
}

void apply_channel_in_place(Matrix& rho, const KrausSet& kraus, int site) {
  const Index dim = rho.rows();
  if (rho.cols() != dim) throw validation_error("apply_channel: rho not square");
  const Index bit = Index(1) << site;
  if (site < 0 || bit >= dim) {
    throw validation_error("apply_channel: site out of range");
  }

  static thread_local Matrix tmp;
  static thread_local Matrix acc;
  tmp.resize(dim, dim);
  acc.setZero(dim, dim);

  for (const auto& k : kraus.ops()) {
    const Complex k00 = k(0, 0), k01 = k(0, 1), k10 = k(1, 0), k11 = k(1, 1);
    // Left multiply by K on the site: mixes row pairs (r, r | bit).
    for (Index high = 0; high < dim; high += bit << 1) {
      for (Index low = 0; low < bit; ++low) {
        const Index r0 = high + low;
        const Index r1 = r0 + bit;
        tmp.row(r0) = k00 * rho.row(r0) + k01 * rho.row(r1);
        tmp.row(r1) = k10 * rho.row(r0) + k11 * rho.row(r1);
      }
    }
    // Right multiply by K^dagger: mixes column pairs.
    const Complex c00 = std::conj(k00), c01 = std::conj(k01);
    const Complex c10 = std::conj(k10), c11 = std::conj(k11);
    for (Index high = 0; high < dim; high += bit << 1) {
      for (Index low = 0; low < bit; ++low) {
        const Index c0 = high + low;
        const Index c1 = c0 + bit;
        acc.col(c0) += tmp.col(c0) * c00 + tmp.col(c1) * c01;
        acc.col(c1) += tmp.col(c0) * c10 + tmp.col(c1) * c11;
      }
    }
  }
  rho.swap(acc);
}

Matrix apply_channel(const Matrix& rho, const KrausSet& kraus, int site) {
  Matrix out = rho;
  apply_channel_in_place(out, kraus, site);
  return out;
}

}  // namespace ftbench::noise
