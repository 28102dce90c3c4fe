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

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ftbench/archive.hpp"

using namespace ftbench;

namespace {

std::string binary_path() {
  const char* path = std::getenv("FTBENCH_BIN");
  REQUIRE_MESSAGE(path != nullptr, "FTBENCH_BIN must point at the CLI binary");
  return path;
}

int run_cli(const std::string& args) {
  const std::string command = binary_path() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing " << path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("simulate writes archives, distributions, and a manifest") {
  const auto dir = fresh_dir("ftbench_cli_sim");
  const int code = run_cli(
      "simulate --L 4 --J 1 --tau 0.5 --steps 120 --shots 5000 --seed 1 --out " +
      dir.string());
  REQUIRE(code == 0);

  const auto archive = bench::ingest(dir / "archive_tau0.5.json");
  CHECK(archive.total_shots() == 5000);
  CHECK(archive.meta.length == 4);

  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["command"] == "simulate");
  CHECK(manifest["seed"] == 1);
  CHECK(manifest["steps"] == 120);
  CHECK(manifest["schedule_knots"].size() == 2);

  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  REQUIRE(report["runs"].size() == 1);
  CHECK(report["runs"][0].contains("efficacy"));
  CHECK(report["runs"][0].contains("exponential_average"));

  CHECK(slurp(dir / "exact_tau0.5.csv").rfind("delta_omega,probability", 0) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("identical invocations produce byte-identical outputs") {
  const auto dir_a = fresh_dir("ftbench_cli_rep_a");
  const auto dir_b = fresh_dir("ftbench_cli_rep_b");
  const std::string flags =
      " --L 3 --J -1 --tau 0.2,0.4 --steps 60 --shots 2000 --seed 99 --noise dephasing:0.05 --out ";
  REQUIRE(run_cli("simulate" + flags + dir_a.string()) == 0);
  REQUIRE(run_cli("simulate" + flags + dir_b.string()) == 0);

  for (const auto& name :
       {"archive_tau0.2.json", "archive_tau0.4.json", "exact_tau0.2.csv",
        "exact_tau0.4.csv", "report.json"}) {
    CHECK_MESSAGE(slurp(dir_a / name) == slurp(dir_b / name), name);
  }
  // Manifests differ only in the out_dir they echo.
  auto manifest_a = nlohmann::json::parse(slurp(dir_a / "manifest.json"));
  auto manifest_b = nlohmann::json::parse(slurp(dir_b / "manifest.json"));
  manifest_a.erase("out_dir");
  manifest_b.erase("out_dir");
  CHECK(manifest_a == manifest_b);

  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);
}

TEST_CASE("exit codes distinguish error classes") {
  const auto dir = fresh_dir("ftbench_cli_err");
  // Capacity class.
  CHECK(run_cli("simulate --L 20 --J 1 --tau 1 --out " + dir.string()) == 3);
  // Validation class.
  CHECK(run_cli("simulate --L 4 --J 1,2 --tau 1 --out " + dir.string()) == 2);
  CHECK(run_cli("simulate --L 4 --J 1 --tau -2 --out " + dir.string()) == 2);
  CHECK(run_cli("simulate --L 4 --J 1 --tau 1 --noise sparkle:1 --out " +
                dir.string()) == 2);
  CHECK(run_cli("analyze --out " + dir.string()) == 2);
  // Unknown flag is a usage problem.
  CHECK(run_cli("simulate --frobnicate") == 2);
  // IO class.
  CHECK(run_cli("simulate --L 4 --J 1 --tau 1 --schedule missing.csv --out " +
                dir.string()) == 4);
  CHECK(run_cli("analyze no_such_archive.json --out " + dir.string()) == 4);
  std::filesystem::remove_all(dir);
}

TEST_CASE("analyze emits reports, histograms, and cross verdicts") {
  const auto sim_dir = fresh_dir("ftbench_cli_an_sim");
  const auto out_dir = fresh_dir("ftbench_cli_an_out");
  REQUIRE(run_cli("simulate --L 4 --J 1 --tau 0.3,0.6 --steps 100 --shots 4000 "
                  "--seed 7 --out " +
                  sim_dir.string()) == 0);

  const int code = run_cli(
      "analyze " + (sim_dir / "archive_tau0.3.json").string() + " " +
      (sim_dir / "archive_tau0.6.json").string() + " --bootstrap 100 --out " +
      out_dir.string());
  REQUIRE(code == 0);

  const auto report = nlohmann::json::parse(slurp(out_dir / "report.json"));
  REQUIRE(report["reports"].size() == 2);
  CHECK(report["cross"].contains("tau_dependent"));
  CHECK(report["reports"][0]["thresholds"]["unital_eps"] == 0.05);
  CHECK(std::filesystem::exists(out_dir / "archive_tau0.3_delta_omega.csv"));
  CHECK(std::filesystem::exists(out_dir / "archive_tau0.3_abs_omega_renorm.csv"));

  std::filesystem::remove_all(sim_dir);
  std::filesystem::remove_all(out_dir);
}

TEST_CASE("chimera subcommand writes a valid embedding") {
  const auto dir = fresh_dir("ftbench_cli_chimera");
  REQUIRE(run_cli("chimera --rows 2 --cols 2 --shore 4 --length 10 --seed 5 --out " +
                  dir.string()) == 0);

  const auto embedding = nlohmann::json::parse(slurp(dir / "embedding.json"));
  REQUIRE(embedding["nodes"].size() == 10);
  CHECK(embedding["couplers"].size() == 9);

  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["chimera"]["nodes"] == 32);
  CHECK(manifest["chimera"]["edges"] == 80);

  // Chain longer than the graph: validation class.
  CHECK(run_cli("chimera --rows 1 --cols 1 --shore 1 --length 5 --out " +
                dir.string()) == 2);
  std::filesystem::remove_all(dir);
}
