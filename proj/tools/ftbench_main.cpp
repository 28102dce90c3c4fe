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

#include <CLI11.hpp>
#include <iostream>

#include "ftbench/run.hpp"

namespace {

// Exit code classes; CLI parse problems count as validation.
constexpr int kExitValidation = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitIo = 4;

struct CliOptions {
  ftbench::run::RunConfig config;
  std::string couplings_text = "1";
  std::string fields_text;
  std::string tau_text = "1";
  std::string noise_text = "none";
  std::vector<std::string> archives;
  int rows = 12, cols = 12, shore = 4, chain_length = 8;
  int max_restarts = 10000;
};

void add_common_flags(CLI::App* cmd, CliOptions& options) {
  cmd->add_option("--seed", options.config.seed, "deterministic seed");
  cmd->add_option("--out", options.config.out_dir,
                  "output directory (created if missing)");
}

void add_schedule_flags(CLI::App* cmd, CliOptions& options) {
  cmd->add_option("--schedule", options.config.schedule_csv,
                  "schedule CSV with header s,g_ghz,delta_ghz");
}

void add_threshold_flags(CLI::App* cmd, CliOptions& options) {
  auto& t = options.config.thresholds;
  cmd->add_option("--eps-unital", t.unital_eps,
                  "unital verdict: allowed distance of 1 from the CI");
  cmd->add_option("--eps-adiabatic", t.adiabatic_eps,
                  "adiabatic verdict: allowed TV against the ideal outcome");
  cmd->add_option("--tau-noise-mult", t.tau_noise_multiplier,
                  "tau verdict: multiplier on the pairwise sampling floor");
  cmd->add_option("--eps-symmetry", t.symmetry_eps,
                  "symmetry verdict: allowed TV between +J and -J");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ftbench: fluctuation-theorem benchmarking for quantum annealers"};
  app.require_subcommand(1);
  CliOptions options;

  auto* simulate = app.add_subcommand(
      "simulate", "anneal an Ising chain and write shot archives");
  simulate->add_option("--L", options.config.length, "chain length")
      ->capture_default_str();
  simulate->add_option("--J", options.couplings_text,
                       "coupling: one value or a comma list of L-1")
      ->capture_default_str();
  simulate->add_option("--h", options.fields_text,
                       "longitudinal fields: one value or a comma list of L");
  simulate->add_option("--tau", options.tau_text,
                       "anneal times in microseconds, comma separated")
      ->capture_default_str();
  simulate->add_option("--noise", options.noise_text,
                       "noise model kind:rate[:excitation]")
      ->capture_default_str();
  simulate->add_option("--steps", options.config.steps, "time slices")
      ->capture_default_str();
  simulate->add_option("--shots", options.config.shots, "samples per anneal")
      ->capture_default_str();
  simulate->add_option("--max-qubits", options.config.max_qubits,
                       "dense-simulation capacity limit")
      ->capture_default_str();
  add_schedule_flags(simulate, options);
  add_common_flags(simulate, options);

  auto* analyze = app.add_subcommand(
      "analyze", "benchmark shot archives against the ideal annealer");
  analyze->add_option("archives", options.archives,
                      "archive files (.json, or .csv with sidecar meta)");
  analyze->add_option("--bootstrap", options.config.bootstrap,
                      "bootstrap resamples for the estimator CI")
      ->capture_default_str();
  add_schedule_flags(analyze, options);
  add_threshold_flags(analyze, options);
  add_common_flags(analyze, options);

  auto* chimera = app.add_subcommand(
      "chimera", "generate a random chain embedding on a chimera graph");
  chimera->add_option("--rows", options.rows, "cell rows")->capture_default_str();
  chimera->add_option("--cols", options.cols, "cell columns")->capture_default_str();
  chimera->add_option("--shore", options.shore, "qubits per shore")
      ->capture_default_str();
  chimera->add_option("--length", options.chain_length, "chain length")
      ->capture_default_str();
  chimera->add_option("--restarts", options.max_restarts,
                      "self-avoiding-walk restart budget")
      ->capture_default_str();
  add_common_flags(chimera, options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitValidation;
  }

  try {
    auto& config = options.config;
    if (simulate->parsed()) {
      config.couplings =
          ftbench::run::parse_couplings(options.couplings_text, config.length);
      config.fields =
          options.fields_text.empty()
              ? std::vector<double>(static_cast<std::size_t>(config.length), 0.0)
              : ftbench::run::parse_fields(options.fields_text, config.length);
      config.taus = ftbench::run::parse_tau_list(options.tau_text);
      config.noise = ftbench::noise::NoiseModel::parse(options.noise_text);
      for (const auto& path : ftbench::run::cmd_simulate(config)) {
        std::cout << "wrote " << path.string() << "\n";
      }
    } else if (analyze->parsed()) {
      for (const auto& path : ftbench::run::cmd_analyze(config, options.archives)) {
        std::cout << "wrote " << path.string() << "\n";
      }
    } else if (chimera->parsed()) {
      for (const auto& path : ftbench::run::cmd_chimera(
               config, options.rows, options.cols, options.shore,
               options.chain_length, options.max_restarts)) {
        std::cout << "wrote " << path.string() << "\n";
      }
    }
  } catch (const ftbench::capacity_error& e) {
    std::cerr << "ftbench: capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ftbench::io_error& e) {
    std::cerr << "ftbench: io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ftbench::validation_error& e) {
    std::cerr << "ftbench: validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ftbench::embedding_error& e) {
    std::cerr << "ftbench: embedding error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "ftbench: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
