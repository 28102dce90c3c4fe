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

#include "ftbench/run.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace ftbench::run {

using nlohmann::json;

namespace {

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw validation_error("bad " + what + " value '" + cell + "'");
    }
  }
  if (out.empty()) throw validation_error(what + " list is empty");
  return out;
}

std::string format_tau(double tau_us) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", tau_us);
  return buffer;
}

/// In-place Walsh-Hadamard transform; symmetric and self-inverse after the
/// 1/sqrt(dim) normalization applied here.
void walsh_hadamard(Vector& psi) {
  const Index dim = psi.size();
  for (Index half = 1; half < dim; half <<= 1) {
    for (Index block = 0; block < dim; block += half << 1) {
      for (Index i = block; i < block + half; ++i) {
        const Complex a = psi(i);
        const Complex b = psi(i + half);
        psi(i) = a + b;
        psi(i + half) = a - b;
      }
    }
  }
  psi /= std::sqrt(static_cast<double>(dim));
}

json thresholds_json(const bench::VerdictThresholds& t) {
  return {{"unital_eps", t.unital_eps},
          {"adiabatic_eps", t.adiabatic_eps},
          {"tau_noise_multiplier", t.tau_noise_multiplier},
          {"symmetry_eps", t.symmetry_eps}};
}

json manifest_base(const RunConfig& config, const std::string& command) {
  json j;
  j["command"] = command;
  j["L"] = config.length;
  j["J"] = config.couplings;
  j["h"] = config.fields;
  j["schedule_csv"] = config.schedule_csv.empty()
                          ? json(nullptr)
                          : json(config.schedule_csv);
  json knots = json::array();
  for (const auto& k : config.schedule(1.0).knots()) {
    knots.push_back({k.s, k.g_ghz, k.delta_ghz});
  }
  j["schedule_knots"] = std::move(knots);
  j["tau_us"] = config.taus;
  j["noise"] = config.noise.describe();
  j["steps"] = config.steps;
  j["max_qubits"] = config.max_qubits;
  j["shots"] = config.shots;
  j["seed"] = config.seed;
  j["bootstrap"] = config.bootstrap;
  j["thresholds"] = thresholds_json(config.thresholds);
  j["out_dir"] = config.out_dir;
  return j;
}

std::filesystem::path write_manifest(const RunConfig& config,
                                     const std::string& command,
                                     json extra = json::object()) {
  json manifest = manifest_base(config, command);
  for (auto& [key, value] : extra.items()) manifest[key] = value;
  const auto path = std::filesystem::path(config.out_dir) / "manifest.json";
  std::ofstream out(path);
  if (!out) throw io_error("cannot write manifest " + path.string());
  out << manifest.dump(2) << '\n';
  if (!out) throw io_error("failed writing manifest " + path.string());
  return path;
}

void ensure_out_dir(const RunConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) {
    throw io_error("cannot create output directory " + config.out_dir + ": " +
                   ec.message());
  }
}

json distribution_json(const tpm::WorkDistribution& distribution) {
  json rows = json::array();
  for (const auto& [key, p] : distribution.probabilities()) {
    rows.push_back({{"key", key}, {"probability", p}});
  }
  return rows;
}

}  // namespace

model::ChainSpec RunConfig::chain() const {
  return model::ChainSpec(length, couplings, fields);
}

model::AnnealSchedule RunConfig::schedule(double tau_us) const {
  if (schedule_csv.empty()) {
    return model::AnnealSchedule::linear_default(tau_us);
  }
  return model::AnnealSchedule::from_csv(schedule_csv, tau_us);
}

std::vector<double> parse_couplings(const std::string& text, int length) {
  auto values = parse_double_list(text, "coupling");
  if (values.size() == 1) {
    values.assign(static_cast<std::size_t>(length - 1), values.front());
  }
  if (values.size() != static_cast<std::size_t>(length - 1)) {
    throw validation_error("expected 1 or " + std::to_string(length - 1) +
                           " couplings, got " + std::to_string(values.size()));
  }
  return values;
}

std::vector<double> parse_fields(const std::string& text, int length) {
  auto values = parse_double_list(text, "field");
  if (values.size() == 1) {
    values.assign(static_cast<std::size_t>(length), values.front());
  }
  if (values.size() != static_cast<std::size_t>(length)) {
    throw validation_error("expected 1 or " + std::to_string(length) +
                           " fields, got " + std::to_string(values.size()));
  }
  return values;
}

std::vector<double> parse_tau_list(const std::string& text) {
  auto values = parse_double_list(text, "tau");
  for (double tau : values) {
    if (!(tau > 0.0)) throw validation_error("anneal times must be positive");
  }
  return values;
}

SimulationResult simulate_cell(const RunConfig& config, double tau_us,
                               std::uint64_t sample_seed) {
  const model::ChainSpec spec = config.chain();
  const model::AnnealSchedule schedule = config.schedule(tau_us);
  ensure_capacity(spec.length(), config.max_qubits);
  const int length = spec.length();
  const Index dim = Index(1) << length;
  const dynamics::EvolutionConfig evolution{config.steps, config.max_qubits};

  // Classical readout tables over z-basis strings.
  std::vector<long long> adjusted(static_cast<std::size_t>(dim));
  std::vector<long long> plain(static_cast<std::size_t>(dim));
  std::vector<int> kinks(static_cast<std::size_t>(dim));
  for (Index z = 0; z < dim; ++z) {
    const auto bits = static_cast<std::uint64_t>(z);
    adjusted[static_cast<std::size_t>(z)] = model::adjusted_bond_energy(bits, spec);
    plain[static_cast<std::size_t>(z)] = model::bond_energy(bits, length);
    kinks[static_cast<std::size_t>(z)] = model::kink_count(bits, spec);
  }

  const Matrix h0 = model::build_hamiltonian(spec, schedule, 0.0, config.max_qubits);
  const Vector psi0 = model::ground_state(h0).statevector();

  // Initial-measurement branches: project psi0 onto the transverse-magnet
  // sectors by filtering in the Walsh-Hadamard basis.  Only sectors with
  // nonzero weight enter the efficacy trace.
  std::vector<std::pair<double, Vector>> branches;  // (exp weight, branch)
  {
    Vector x_basis = psi0;
    walsh_hadamard(x_basis);
    for (int m = 0; m <= length; ++m) {
      Vector filtered = Vector::Zero(dim);
      double weight = 0.0;
      for (Index b = 0; b < dim; ++b) {
        if (std::popcount(static_cast<std::uint64_t>(b)) == m) {
          filtered(b) = x_basis(b);
          weight += std::norm(x_basis(b));
        }
      }
      if (weight <= 1e-15) continue;
      walsh_hadamard(filtered);
      branches.emplace_back(std::exp(static_cast<double>(length - 1 - 2 * m)),
                            std::move(filtered));
    }
  }

  SimulationResult result;
  result.tau_us = tau_us;

  CompensatedSum gamma;
  if (!config.noise.enabled()) {
    // One slice sweep propagates the state and every measurement branch.
    Matrix columns(dim, 1 + static_cast<Index>(branches.size()));
    columns.col(0) = psi0;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      columns.col(1 + static_cast<Index>(i)) = branches[i].second;
    }
    const double theta = kPhasePerGhzUs * tau_us / config.steps;
    for (int k = 0; k < config.steps; ++k) {
      const double s = (k + 0.5) / config.steps;
      Eigen::SelfAdjointEigenSolver<Matrix> es(
          model::build_hamiltonian(spec, schedule, s, config.max_qubits));
      Matrix coeffs = es.eigenvectors().adjoint() * columns;
      for (Index r = 0; r < dim; ++r) {
        coeffs.row(r) *= std::polar(1.0, -theta * es.eigenvalues()(r));
      }
      columns.noalias() = es.eigenvectors() * coeffs;
    }
    result.final_probabilities = columns.col(0).cwiseAbs2();
    for (std::size_t i = 0; i < branches.size(); ++i) {
      const auto branch = columns.col(1 + static_cast<Index>(i));
      CompensatedSum trace;
      for (Index z = 0; z < dim; ++z) {
        trace.add(std::exp(-static_cast<double>(adjusted[static_cast<std::size_t>(z)])) *
                  std::norm(branch(z)));
      }
      gamma.add(branches[i].first * trace.value());
    }
  } else {
    const dynamics::QuantumMap map =
        dynamics::QuantumMap::channel(spec, schedule, config.noise, evolution);
    const Matrix rho_final = map.apply(psi0 * psi0.adjoint());
    result.final_probabilities = rho_final.diagonal().real().cwiseMax(0.0);

    Matrix weighted = Matrix::Zero(dim, dim);
    for (const auto& [weight, branch] : branches) {
      weighted.noalias() += weight * (branch * branch.adjoint());
    }
    const Matrix evolved = map.apply(weighted);
    for (Index z = 0; z < dim; ++z) {
      gamma.add(std::exp(-static_cast<double>(adjusted[static_cast<std::size_t>(z)])) *
                evolved(z, z).real());
    }
  }
  result.efficacy = gamma.value();

  // Exact outcome distributions from the final z-basis law, with the first
  // outcome taken as certain at L - 1.
  std::map<long long, CompensatedSum> delta_sums;
  std::map<long long, CompensatedSum> abs_sums;
  CompensatedSum kink_mean;
  for (Index z = 0; z < dim; ++z) {
    const double p = result.final_probabilities(z);
    if (p <= 0.0) continue;
    const auto zi = static_cast<std::size_t>(z);
    delta_sums[adjusted[zi] - (length - 1)].add(p);
    abs_sums[std::llabs(plain[zi])].add(p);
    kink_mean.add(p * kinks[zi]);
  }
  for (const auto& [key, sum] : delta_sums) result.exact_delta.add(key, sum.value());
  for (const auto& [key, sum] : abs_sums) result.exact_abs.add(key, sum.value());
  result.exact_delta.meta = {length, tau_us, config.noise.describe()};
  result.exact_abs.meta = result.exact_delta.meta;
  result.exponential_avg = tpm::exponential_average(result.exact_delta);
  result.mean_kinks = kink_mean.value();
  result.kink_density = result.mean_kinks / (length - 1);

  result.shots = tpm::sample_shots(result.final_probabilities, spec,
                                   config.shots, sample_seed);
  result.shots.meta.tau_us = tau_us;
  result.shots.meta.note =
      "seed=" + std::to_string(sample_seed) + " noise=" + config.noise.describe();
  return result;
}

std::vector<std::filesystem::path> cmd_simulate(const RunConfig& config) {
  if (config.taus.empty()) {
    throw validation_error("simulate needs at least one anneal time");
  }
  if (config.shots < 1) throw validation_error("shots must be >= 1");
  config.chain();              // validates chain parameters
  config.schedule(config.taus.front());  // validates the profile
  ensure_capacity(config.length, config.max_qubits);
  ensure_out_dir(config);

  std::vector<std::filesystem::path> written;
  json report;
  report["runs"] = json::array();

  for (std::size_t i = 0; i < config.taus.size(); ++i) {
    const double tau = config.taus[i];
    const std::uint64_t sample_seed =
        config.seed + 1000003ULL * static_cast<std::uint64_t>(i);
    SimulationResult result = simulate_cell(config, tau, sample_seed);

    const std::string tag = format_tau(tau);
    const auto archive_path = std::filesystem::path(config.out_dir) /
                              ("archive_tau" + tag + ".json");
    bench::write_archive_json(result.shots, archive_path);
    written.push_back(archive_path);

    const auto exact_path = std::filesystem::path(config.out_dir) /
                            ("exact_tau" + tag + ".csv");
    tpm::write_distribution_csv(result.exact_delta, exact_path);
    written.push_back(exact_path);

    json run;
    run["tau_us"] = tau;
    run["sample_seed"] = sample_seed;
    run["exact_delta_omega"] = distribution_json(result.exact_delta);
    run["exact_abs_omega"] = distribution_json(result.exact_abs);
    run["exponential_average"] = result.exponential_avg;
    run["efficacy"] = result.efficacy;
    run["ft_gap"] = std::abs(result.exponential_avg - result.efficacy);
    run["mean_kinks"] = result.mean_kinks;
    run["kink_density"] = result.kink_density;
    run["archive"] = archive_path.filename().string();
    run["exact_csv"] = exact_path.filename().string();
    report["runs"].push_back(std::move(run));
  }

  const auto report_path = std::filesystem::path(config.out_dir) / "report.json";
  {
    std::ofstream out(report_path);
    if (!out) throw io_error("cannot write report " + report_path.string());
    out << report.dump(2) << '\n';
    if (!out) throw io_error("failed writing report " + report_path.string());
  }
  written.push_back(report_path);
  written.push_back(write_manifest(config, "simulate"));
  return written;
}

std::vector<std::filesystem::path> cmd_analyze(
    const RunConfig& config, const std::vector<std::string>& archives) {
  if (archives.empty()) {
    throw validation_error("analyze needs at least one archive path");
  }
  ensure_out_dir(config);

  const model::AnnealSchedule profile = config.schedule(1.0);
  std::vector<std::filesystem::path> written;
  std::vector<bench::BenchmarkReport> reports;
  reports.reserve(archives.size());

  for (const auto& path_text : archives) {
    const std::filesystem::path path(path_text);
    const bench::ShotArchive archive = bench::ingest(path);
    bench::BenchmarkReport report = bench::analyze_archive(
        archive, profile, config.thresholds, config.bootstrap, config.seed);
    bench::write_histogram_csvs(report, config.out_dir, path.stem().string());
    written.push_back(std::filesystem::path(config.out_dir) /
                      (path.stem().string() + "_delta_omega.csv"));
    written.push_back(std::filesystem::path(config.out_dir) /
                      (path.stem().string() + "_abs_omega_renorm.csv"));
    reports.push_back(std::move(report));
  }

  const bench::CrossVerdicts cross = bench::verdicts(reports, config.thresholds);

  const auto report_path = std::filesystem::path(config.out_dir) / "report.json";
  {
    std::ofstream out(report_path);
    if (!out) throw io_error("cannot write report " + report_path.string());
    out << bench::reports_to_json(reports, cross) << '\n';
    if (!out) throw io_error("failed writing report " + report_path.string());
  }
  written.push_back(report_path);

  json extra;
  extra["archives"] = archives;
  written.push_back(write_manifest(config, "analyze", std::move(extra)));

  const auto flag = [](std::optional<bool> value) {
    return !value.has_value() ? "n/a" : (*value ? "yes" : "no");
  };
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    std::cout << archives[i] << ": unital=" << (r.unital ? "yes" : "no")
              << " adiabatic=" << (r.adiabatic ? "yes" : "no")
              << " ft=" << r.ft.estimate << " [" << r.ft.ci_low << ", "
              << r.ft.ci_high << "]"
              << " tv_ideal=" << r.tv_to_ideal
              << " kinks=" << r.kinks.mean << "\n";
  }
  std::cout << "cross: tau_dependent=" << flag(cross.tau_dependent)
            << " symmetric=" << flag(cross.symmetric) << "\n";
  return written;
}

std::vector<std::filesystem::path> cmd_chimera(const RunConfig& config,
                                               int rows, int cols, int shore,
                                               int chain_length,
                                               int max_restarts) {
  ensure_out_dir(config);
  const chimera::ChimeraGraph graph(rows, cols, shore);
  const chimera::ChainEmbedding chain =
      chimera::random_chain(graph, chain_length, config.seed, max_restarts);
  const auto report = chimera::validate_embedding(graph, chain);
  if (!report.ok) {
    throw validation_error("generated chain failed validation: " +
                           report.violation);
  }

  std::vector<std::filesystem::path> written;
  const auto path = std::filesystem::path(config.out_dir) / "embedding.json";
  chimera::write_embedding_json(chain, path);
  written.push_back(path);

  json extra;
  extra["chimera"] = {{"rows", rows},
                      {"cols", cols},
                      {"shore", shore},
                      {"chain_length", chain_length},
                      {"max_restarts", max_restarts},
                      {"nodes", graph.node_count()},
                      {"edges", graph.edge_count()}};
  written.push_back(write_manifest(config, "chimera", std::move(extra)));
  return written;
}

}  // namespace ftbench::run
