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

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ftbench/run.hpp"

namespace py = pybind11;

using namespace ftbench;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fluctuation-theorem benchmarking toolkit for quantum annealers";

  py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<capacity_error>(m, "CapacityError", PyExc_ValueError);
  py::register_exception<io_error>(m, "IoError", PyExc_IOError);
  py::register_exception<embedding_error>(m, "EmbeddingError", PyExc_RuntimeError);

  // --- model -----------------------------------------------------------

  py::class_<model::ChainSpec>(m, "ChainSpec")
      .def(py::init<int, std::vector<double>, std::vector<double>>(),
           py::arg("length"), py::arg("couplings"),
           py::arg("fields") = std::vector<double>{})
      .def_static("uniform", &model::ChainSpec::uniform, py::arg("length"),
                  py::arg("coupling"))
      .def_property_readonly("length", &model::ChainSpec::length)
      .def_property_readonly("couplings", &model::ChainSpec::couplings)
      .def_property_readonly("fields", &model::ChainSpec::fields);

  py::class_<model::ScheduleKnot>(m, "ScheduleKnot")
      .def(py::init([](double s, double g, double delta) {
             return model::ScheduleKnot{s, g, delta};
           }),
           py::arg("s"), py::arg("g_ghz"), py::arg("delta_ghz"))
      .def_readwrite("s", &model::ScheduleKnot::s)
      .def_readwrite("g_ghz", &model::ScheduleKnot::g_ghz)
      .def_readwrite("delta_ghz", &model::ScheduleKnot::delta_ghz);

  py::class_<model::AnnealSchedule>(m, "AnnealSchedule")
      .def(py::init<double, std::vector<model::ScheduleKnot>>(),
           py::arg("tau_us"), py::arg("knots"))
      .def_static("linear_default", &model::AnnealSchedule::linear_default,
                  py::arg("tau_us"))
      .def_static("from_csv", &model::AnnealSchedule::from_csv, py::arg("path"),
                  py::arg("tau_us"))
      .def("g", &model::AnnealSchedule::g, py::arg("s"))
      .def("delta", &model::AnnealSchedule::delta, py::arg("s"))
      .def_property_readonly("tau_us", &model::AnnealSchedule::tau_us)
      .def("with_tau", &model::AnnealSchedule::with_tau, py::arg("tau_us"));

  py::class_<model::EigenPair>(m, "EigenPair")
      .def_readonly("value", &model::EigenPair::value)
      .def_readonly("projector", &model::EigenPair::projector)
      .def_property_readonly("rank", &model::EigenPair::rank);

  py::class_<model::Observable>(m, "Observable")
      .def_property_readonly("dim", &model::Observable::dim)
      .def_property_readonly("pairs", &model::Observable::pairs)
      .def("eigenvalues", &model::Observable::eigenvalues)
      .def("matrix", &model::Observable::matrix)
      .def("exp_weighted", &model::Observable::exp_weighted, py::arg("scale"));

  py::class_<model::QuantumState>(m, "QuantumState")
      .def_static("pure", &model::QuantumState::pure, py::arg("psi"),
                  py::arg("tol") = 1e-10)
      .def_static("mixed", &model::QuantumState::mixed, py::arg("rho"),
                  py::arg("tol") = 1e-10)
      .def_property_readonly("is_pure", &model::QuantumState::is_pure)
      .def_property_readonly("dim", &model::QuantumState::dim)
      .def("statevector", &model::QuantumState::statevector)
      .def("density_matrix", &model::QuantumState::density_matrix)
      .def("to_density", &model::QuantumState::to_density);

  m.def("build_hamiltonian", &model::build_hamiltonian, py::arg("spec"),
        py::arg("schedule"), py::arg("s"),
        py::arg("max_qubits") = kDefaultMaxQubits);
  m.def("build_omega_initial", &model::build_omega_initial, py::arg("length"),
        py::arg("max_qubits") = kDefaultMaxQubits);
  m.def("build_omega_final",
        py::overload_cast<int, int>(&model::build_omega_final),
        py::arg("length"), py::arg("max_qubits") = kDefaultMaxQubits);
  m.def("build_omega_final_adjusted",
        py::overload_cast<const model::ChainSpec&, int>(&model::build_omega_final),
        py::arg("spec"), py::arg("max_qubits") = kDefaultMaxQubits,
        "Bond observable weighted by coupling signs");
  m.def("ground_state", &model::ground_state, py::arg("hamiltonian"),
        py::arg("gap_tol") = 1e-9);
  m.def("spectral_decompose", &model::spectral_decompose, py::arg("hermitian"),
        py::arg("cluster_tol") = 1e-8);

  // --- noise -----------------------------------------------------------

  py::enum_<noise::NoiseKind>(m, "NoiseKind")
      .value("none", noise::NoiseKind::none)
      .value("dephasing", noise::NoiseKind::dephasing)
      .value("depolarizing", noise::NoiseKind::depolarizing)
      .value("amplitude_damping", noise::NoiseKind::amplitude_damping)
      .value("thermal", noise::NoiseKind::thermal);

  py::class_<noise::NoiseModel>(m, "NoiseModel")
      .def(py::init<>())
      .def(py::init<noise::NoiseKind, double, double>(), py::arg("kind"),
           py::arg("rate"), py::arg("excitation") = 0.0)
      .def_static("parse", &noise::NoiseModel::parse, py::arg("text"))
      .def_readonly("kind", &noise::NoiseModel::kind)
      .def_readonly("rate", &noise::NoiseModel::rate)
      .def_readonly("excitation", &noise::NoiseModel::excitation)
      .def("describe", &noise::NoiseModel::describe);

  py::class_<noise::KrausSet>(m, "KrausSet")
      .def(py::init<std::vector<Eigen::Matrix2cd>, double>(), py::arg("ops"),
           py::arg("tol") = 1e-12)
      .def_static("identity", &noise::KrausSet::identity)
      .def_property_readonly("ops", &noise::KrausSet::ops);

  py::class_<noise::UnitalityReport>(m, "UnitalityReport")
      .def_readonly("unital", &noise::UnitalityReport::unital)
      .def_readonly("deviation", &noise::UnitalityReport::deviation);

  m.def("kraus_for", &noise::kraus_for, py::arg("model"), py::arg("p_slice"));
  m.def("is_unital", &noise::is_unital, py::arg("kraus"),
        py::arg("tol") = 1e-12);
  m.def("apply_channel", &noise::apply_channel, py::arg("rho"),
        py::arg("kraus"), py::arg("site"));

  // --- dynamics ---------------------------------------------------------

  py::class_<dynamics::EvolutionConfig>(m, "EvolutionConfig")
      .def(py::init([](int steps, int max_qubits) {
             return dynamics::EvolutionConfig{steps, max_qubits};
           }),
           py::arg("steps") = 2000, py::arg("max_qubits") = kDefaultMaxQubits)
      .def_readwrite("steps", &dynamics::EvolutionConfig::steps)
      .def_readwrite("max_qubits", &dynamics::EvolutionConfig::max_qubits);

  py::class_<dynamics::QuantumMap>(m, "QuantumMap")
      .def_static("identity", &dynamics::QuantumMap::identity, py::arg("dim"))
      .def_static("unitary", &dynamics::QuantumMap::unitary, py::arg("spec"),
                  py::arg("schedule"),
                  py::arg("config") = dynamics::EvolutionConfig{})
      .def_static("channel", &dynamics::QuantumMap::channel, py::arg("spec"),
                  py::arg("schedule"), py::arg("noise"),
                  py::arg("config") = dynamics::EvolutionConfig{})
      .def_static("from_unitary_matrix", &dynamics::QuantumMap::from_unitary_matrix,
                  py::arg("u"))
      .def("apply", &dynamics::QuantumMap::apply, py::arg("rho"))
      .def_property_readonly("dim", &dynamics::QuantumMap::dim);

  m.def("evolve_unitary", &dynamics::evolve_unitary, py::arg("state"),
        py::arg("spec"), py::arg("schedule"),
        py::arg("config") = dynamics::EvolutionConfig{});
  m.def("evolve_channel", &dynamics::evolve_channel, py::arg("rho"),
        py::arg("spec"), py::arg("schedule"), py::arg("noise"),
        py::arg("config") = dynamics::EvolutionConfig{});

  // --- tpm ---------------------------------------------------------------

  py::class_<tpm::TransitionMatrix>(m, "TransitionMatrix")
      .def_readonly("initial_values", &tpm::TransitionMatrix::initial_values)
      .def_readonly("final_values", &tpm::TransitionMatrix::final_values)
      .def_readonly("probabilities", &tpm::TransitionMatrix::probabilities)
      .def("validate", &tpm::TransitionMatrix::validate);

  py::class_<tpm::WorkDistribution>(m, "WorkDistribution")
      .def(py::init<>())
      .def("add", &tpm::WorkDistribution::add, py::arg("key"),
           py::arg("probability"))
      .def("probability", &tpm::WorkDistribution::probability, py::arg("key"))
      .def("probabilities",
           [](const tpm::WorkDistribution& d) {
             return std::map<long long, double>(d.probabilities().begin(),
                                                d.probabilities().end());
           })
      .def("total", &tpm::WorkDistribution::total)
      .def("total_variation", &tpm::WorkDistribution::total_variation,
           py::arg("other"));

  m.def("post_measurement_state", &tpm::post_measurement_state, py::arg("rho"),
        py::arg("omega_initial"));
  m.def("transition_matrix", &tpm::transition_matrix, py::arg("rho"),
        py::arg("omega_initial"), py::arg("omega_final"), py::arg("map"));
  m.def("work_distribution", &tpm::work_distribution, py::arg("transitions"));
  m.def("exponential_average", &tpm::exponential_average, py::arg("distribution"));
  m.def("efficacy", &tpm::efficacy, py::arg("rho"), py::arg("omega_initial"),
        py::arg("omega_final"), py::arg("map"));
  m.def("ideal_distribution", &tpm::ideal_distribution, py::arg("length"));
  m.def("sample_shots", &tpm::sample_shots, py::arg("probabilities"),
        py::arg("spec"), py::arg("shots"), py::arg("seed"));
  m.def("sample_work_outcomes", &tpm::sample_work_outcomes,
        py::arg("distribution"), py::arg("shots"), py::arg("seed"));
  m.def("write_distribution_csv", &tpm::write_distribution_csv,
        py::arg("distribution"), py::arg("path"));
  m.def("read_distribution_csv", &tpm::read_distribution_csv, py::arg("path"));

  // --- archive / bench ----------------------------------------------------

  py::class_<bench::ArchiveMeta>(m, "ArchiveMeta")
      .def(py::init<>())
      .def_readwrite("length", &bench::ArchiveMeta::length)
      .def_readwrite("couplings", &bench::ArchiveMeta::couplings)
      .def_readwrite("uniform_coupling", &bench::ArchiveMeta::uniform_coupling)
      .def_readwrite("tau_us", &bench::ArchiveMeta::tau_us)
      .def_readwrite("machine", &bench::ArchiveMeta::machine)
      .def_readwrite("note", &bench::ArchiveMeta::note)
      .def("chain", &bench::ArchiveMeta::chain);

  py::class_<bench::ShotSample>(m, "ShotSample")
      .def(py::init([](std::vector<int> spins, long long count) {
             return bench::ShotSample{std::move(spins), count};
           }),
           py::arg("spins"), py::arg("count"))
      .def_readwrite("spins", &bench::ShotSample::spins)
      .def_readwrite("count", &bench::ShotSample::count);

  py::class_<bench::ShotArchive>(m, "ShotArchive")
      .def(py::init<>())
      .def_readwrite("meta", &bench::ShotArchive::meta)
      .def_readwrite("samples", &bench::ShotArchive::samples)
      .def("total_shots", &bench::ShotArchive::total_shots)
      .def("validate", &bench::ShotArchive::validate);

  m.def("ingest", &bench::ingest, py::arg("path"));
  m.def("write_archive_json", &bench::write_archive_json, py::arg("archive"),
        py::arg("path"));
  m.def("write_archive_csv", &bench::write_archive_csv, py::arg("archive"),
        py::arg("path"));

  py::class_<bench::FinalEnergy>(m, "FinalEnergy")
      .def_readonly("omega_f", &bench::FinalEnergy::omega_f)
      .def_readonly("kinks", &bench::FinalEnergy::kinks);

  py::class_<bench::EmpiricalDistributions>(m, "EmpiricalDistributions")
      .def_readonly("delta_omega", &bench::EmpiricalDistributions::delta_omega)
      .def_readonly("abs_omega", &bench::EmpiricalDistributions::abs_omega)
      .def_readonly("shots", &bench::EmpiricalDistributions::shots);

  py::class_<bench::FtEstimate>(m, "FtEstimate")
      .def_readonly("estimate", &bench::FtEstimate::estimate)
      .def_readonly("ci_low", &bench::FtEstimate::ci_low)
      .def_readonly("ci_high", &bench::FtEstimate::ci_high)
      .def_readonly("bootstrap", &bench::FtEstimate::bootstrap)
      .def_readonly("level", &bench::FtEstimate::level);

  py::class_<bench::AdiabaticThreshold>(m, "AdiabaticThreshold")
      .def_readonly("tau_ad_us", &bench::AdiabaticThreshold::tau_ad_us)
      .def_readonly("crossing_s", &bench::AdiabaticThreshold::crossing_s)
      .def_readonly("delta_at_crossing_ghz",
                    &bench::AdiabaticThreshold::delta_at_crossing_ghz);

  py::class_<bench::KinkStatistics>(m, "KinkStatistics")
      .def_readonly("mean", &bench::KinkStatistics::mean)
      .def_readonly("density", &bench::KinkStatistics::density)
      .def_readonly("stderr_mean", &bench::KinkStatistics::stderr_mean)
      .def_readonly("stderr_density", &bench::KinkStatistics::stderr_density);

  py::class_<bench::VerdictThresholds>(m, "VerdictThresholds")
      .def(py::init<>())
      .def_readwrite("unital_eps", &bench::VerdictThresholds::unital_eps)
      .def_readwrite("adiabatic_eps", &bench::VerdictThresholds::adiabatic_eps)
      .def_readwrite("tau_noise_multiplier",
                     &bench::VerdictThresholds::tau_noise_multiplier)
      .def_readwrite("symmetry_eps", &bench::VerdictThresholds::symmetry_eps);

  py::class_<bench::BenchmarkReport>(m, "BenchmarkReport")
      .def_readonly("meta", &bench::BenchmarkReport::meta)
      .def_readonly("shots", &bench::BenchmarkReport::shots)
      .def_readonly("delta_omega", &bench::BenchmarkReport::delta_omega)
      .def_readonly("abs_omega", &bench::BenchmarkReport::abs_omega)
      .def_readonly("ft", &bench::BenchmarkReport::ft)
      .def_readonly("tv_to_ideal", &bench::BenchmarkReport::tv_to_ideal)
      .def_readonly("kinks", &bench::BenchmarkReport::kinks)
      .def_readonly("threshold", &bench::BenchmarkReport::threshold)
      .def_readonly("unital", &bench::BenchmarkReport::unital)
      .def_readonly("adiabatic", &bench::BenchmarkReport::adiabatic);

  py::class_<bench::CrossVerdicts>(m, "CrossVerdicts")
      .def_readonly("tau_groups", &bench::CrossVerdicts::tau_groups)
      .def_readonly("tau_dependent", &bench::CrossVerdicts::tau_dependent)
      .def_readonly("max_pairwise_tv", &bench::CrossVerdicts::max_pairwise_tv)
      .def_readonly("tau_threshold_at_max",
                    &bench::CrossVerdicts::tau_threshold_at_max)
      .def_readonly("symmetric", &bench::CrossVerdicts::symmetric)
      .def_readonly("symmetry_tv", &bench::CrossVerdicts::symmetry_tv);

  m.def("final_energy",
        [](const std::vector<int>& spins, const model::ChainSpec& spec) {
          return bench::final_energy(spins, spec);
        },
        py::arg("spins"), py::arg("spec"));
  m.def("empirical_distribution", &bench::empirical_distribution,
        py::arg("archive"), py::arg("spec"));
  m.def("ft_estimate", &bench::ft_estimate, py::arg("archive"), py::arg("spec"),
        py::arg("bootstrap") = 1000, py::arg("seed") = 1);
  m.def("adiabatic_threshold", &bench::adiabatic_threshold, py::arg("length"),
        py::arg("schedule"));
  m.def("kink_statistics", &bench::kink_statistics, py::arg("archive"),
        py::arg("spec"));
  m.def("gauge_flipped", &bench::gauge_flipped, py::arg("archive"));
  m.def("analyze_archive", &bench::analyze_archive, py::arg("archive"),
        py::arg("schedule_profile"),
        py::arg("thresholds") = bench::VerdictThresholds{},
        py::arg("bootstrap") = 1000, py::arg("seed") = 1);
  m.def("verdicts", &bench::verdicts, py::arg("reports"),
        py::arg("thresholds") = bench::VerdictThresholds{});
  m.def("report_to_json", &bench::report_to_json, py::arg("report"));

  // --- chimera ------------------------------------------------------------

  py::class_<chimera::ChimeraGraph>(m, "ChimeraGraph")
      .def(py::init<int, int, int>(), py::arg("rows"), py::arg("cols"),
           py::arg("shore") = 4)
      .def_property_readonly("rows", &chimera::ChimeraGraph::rows)
      .def_property_readonly("cols", &chimera::ChimeraGraph::cols)
      .def_property_readonly("shore", &chimera::ChimeraGraph::shore)
      .def("node_count", &chimera::ChimeraGraph::node_count)
      .def("edge_count", &chimera::ChimeraGraph::edge_count)
      .def("node_id", &chimera::ChimeraGraph::node_id, py::arg("row"),
           py::arg("col"), py::arg("shore_side"), py::arg("k"))
      .def("neighbors", &chimera::ChimeraGraph::neighbors, py::arg("node"))
      .def("has_edge", &chimera::ChimeraGraph::has_edge, py::arg("a"),
           py::arg("b"));

  py::class_<chimera::ChainEmbedding>(m, "ChainEmbedding")
      .def(py::init<>())
      .def_readwrite("nodes", &chimera::ChainEmbedding::nodes)
      .def("couplers", &chimera::ChainEmbedding::couplers);

  py::class_<chimera::EmbeddingReport>(m, "EmbeddingReport")
      .def_readonly("ok", &chimera::EmbeddingReport::ok)
      .def_readonly("violation", &chimera::EmbeddingReport::violation);

  m.def("build_chimera",
        [](int rows, int cols, int shore) {
          return chimera::ChimeraGraph(rows, cols, shore);
        },
        py::arg("rows"), py::arg("cols"), py::arg("shore") = 4);
  m.def("random_chain", &chimera::random_chain, py::arg("graph"),
        py::arg("length"), py::arg("seed"), py::arg("max_restarts") = 10000);
  m.def("validate_embedding", &chimera::validate_embedding, py::arg("graph"),
        py::arg("chain"));
  m.def("embedding_to_json", &chimera::embedding_to_json, py::arg("chain"));

  // --- run ------------------------------------------------------------------

  py::class_<run::RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("length", &run::RunConfig::length)
      .def_readwrite("couplings", &run::RunConfig::couplings)
      .def_readwrite("fields", &run::RunConfig::fields)
      .def_readwrite("schedule_csv", &run::RunConfig::schedule_csv)
      .def_readwrite("taus", &run::RunConfig::taus)
      .def_readwrite("noise", &run::RunConfig::noise)
      .def_readwrite("steps", &run::RunConfig::steps)
      .def_readwrite("max_qubits", &run::RunConfig::max_qubits)
      .def_readwrite("shots", &run::RunConfig::shots)
      .def_readwrite("seed", &run::RunConfig::seed)
      .def_readwrite("bootstrap", &run::RunConfig::bootstrap)
      .def_readwrite("thresholds", &run::RunConfig::thresholds)
      .def_readwrite("out_dir", &run::RunConfig::out_dir);

  py::class_<run::SimulationResult>(m, "SimulationResult")
      .def_readonly("tau_us", &run::SimulationResult::tau_us)
      .def_readonly("exact_delta", &run::SimulationResult::exact_delta)
      .def_readonly("exact_abs", &run::SimulationResult::exact_abs)
      .def_readonly("exponential_avg", &run::SimulationResult::exponential_avg)
      .def_readonly("efficacy", &run::SimulationResult::efficacy)
      .def_readonly("mean_kinks", &run::SimulationResult::mean_kinks)
      .def_readonly("kink_density", &run::SimulationResult::kink_density)
      .def_readonly("final_probabilities",
                    &run::SimulationResult::final_probabilities)
      .def_readonly("shots", &run::SimulationResult::shots);

  m.def("simulate_cell", &run::simulate_cell, py::arg("config"),
        py::arg("tau_us"), py::arg("sample_seed"));
  m.def("cmd_simulate", &run::cmd_simulate, py::arg("config"));
  m.def("cmd_analyze", &run::cmd_analyze, py::arg("config"), py::arg("archives"));
  m.def("cmd_chimera", &run::cmd_chimera, py::arg("config"), py::arg("rows"),
        py::arg("cols"), py::arg("shore"), py::arg("chain_length"),
        py::arg("max_restarts") = 10000);

  m.attr("__version__") = "0.1.0";
  m.attr("DEFAULT_MAX_QUBITS") = kDefaultMaxQubits;
}
