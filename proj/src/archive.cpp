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

#include "ftbench/archive.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ftbench::bench {

using nlohmann::json;

model::ChainSpec ArchiveMeta::chain() const {
  return model::ChainSpec(length, couplings);
}

long long ShotArchive::total_shots() const {
  long long total = 0;
  for (const auto& s : samples) total += s.count;
  return total;
}

void ShotArchive::validate() const {
  if (meta.length < 2) {
    throw validation_error("archive metadata: chain length must be >= 2");
  }
  if (meta.couplings.size() != static_cast<std::size_t>(meta.length - 1)) {
    throw validation_error("archive metadata: expected " +
                           std::to_string(meta.length - 1) + " couplings");
  }
  if (samples.empty()) {
    throw validation_error("archive has no samples");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    const std::string where = "sample " + std::to_string(i);
    if (s.spins.size() != static_cast<std::size_t>(meta.length)) {
      throw validation_error(where + ": expected " +
                             std::to_string(meta.length) + " spins, got " +
                             std::to_string(s.spins.size()));
    }
    for (int v : s.spins) {
      if (v != -1 && v != 1) {
        throw validation_error(where + ": spin value " + std::to_string(v) +
                               " is not -1 or +1");
      }
    }
    if (s.count < 1) {
      throw validation_error(where + ": count must be >= 1");
    }
  }
}

namespace {

ArchiveMeta meta_from_json(const json& j, const std::string& name) {
  ArchiveMeta meta;
  if (!j.is_object()) throw validation_error(name + ": meta must be an object");
  if (!j.contains("L") || !j["L"].is_number_integer()) {
    throw validation_error(name + ": meta needs an integer field 'L'");
  }
  meta.length = j["L"].get<int>();
  if (meta.length < 2) throw validation_error(name + ": meta.L must be >= 2");

  if (!j.contains("J")) throw validation_error(name + ": meta needs 'J'");
  const auto& cj = j["J"];
  if (cj.is_number()) {
    meta.uniform_coupling = true;
    meta.couplings.assign(static_cast<std::size_t>(meta.length - 1),
                          cj.get<double>());
  } else if (cj.is_array()) {
    meta.uniform_coupling = false;
    meta.couplings = cj.get<std::vector<double>>();
    if (meta.couplings.size() != static_cast<std::size_t>(meta.length - 1)) {
      throw validation_error(name + ": meta.J must have L-1 entries");
    }
  } else {
    throw validation_error(name + ": meta.J must be a number or an array");
  }

  if (j.contains("tau_us")) meta.tau_us = j["tau_us"].get<double>();
  if (j.contains("machine")) meta.machine = j["machine"].get<std::string>();
  if (j.contains("note")) meta.note = j["note"].get<std::string>();
  return meta;
}

json meta_to_json(const ArchiveMeta& meta) {
  json j;
  j["L"] = meta.length;
  if (meta.uniform_coupling && !meta.couplings.empty()) {
    j["J"] = meta.couplings.front();
  } else {
    j["J"] = meta.couplings;
  }
  j["tau_us"] = meta.tau_us;
  j["machine"] = meta.machine;
  if (!meta.note.empty()) j["note"] = meta.note;
  return j;
}

}  // namespace

ShotArchive archive_from_json(std::istream& in, const std::string& name) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw validation_error(name + ": invalid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("meta") || !j.contains("samples")) {
    throw validation_error(name + ": archive needs 'meta' and 'samples'");
  }

  ShotArchive archive;
  archive.meta = meta_from_json(j["meta"], name);
  if (!j["samples"].is_array()) {
    throw validation_error(name + ": 'samples' must be an array");
  }
  archive.samples.reserve(j["samples"].size());
  std::size_t index = 0;
  for (const auto& sj : j["samples"]) {
    const std::string where = name + ": samples[" + std::to_string(index) + "]";
    if (!sj.is_object() || !sj.contains("spins") || !sj.contains("count")) {
      throw validation_error(where + ": needs 'spins' and 'count'");
    }
    ShotSample sample;
    try {
      sample.spins = sj["spins"].get<std::vector<int>>();
      sample.count = sj["count"].get<long long>();
    } catch (const json::exception& e) {
      throw validation_error(where + ": " + e.what());
    }
    archive.samples.push_back(std::move(sample));
    ++index;
  }
  try {
    archive.validate();
  } catch (const validation_error& e) {
    throw validation_error(name + ": " + e.what());
  }
  return archive;
}

ShotArchive archive_from_csv(std::istream& rows, std::istream& meta,
                             const std::string& name) {
  json mj;
  try {
    mj = json::parse(meta);
  } catch (const json::exception& e) {
    throw validation_error(name + ": invalid sidecar JSON: " + e.what());
  }

  ShotArchive archive;
  archive.meta = meta_from_json(mj, name);
  const int length = archive.meta.length;

  std::string line;
  if (!std::getline(rows, line)) {
    throw validation_error(name + ":1: empty CSV");
  }
  {
    std::ostringstream expected;
    for (int i = 1; i <= length; ++i) expected << 's' << i << ',';
    expected << "count";
    std::string header = line;
    while (!header.empty() && (header.back() == '\r' || header.back() == '\n')) {
      header.pop_back();
    }
    if (header != expected.str()) {
      throw validation_error(name + ":1: expected header '" + expected.str() +
                             "'");
    }
  }

  int lineno = 1;
  while (std::getline(rows, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
      line.pop_back();
    }
    if (line.empty()) continue;
    std::istringstream cells(line);
    std::string cell;
    ShotSample sample;
    sample.spins.reserve(static_cast<std::size_t>(length));
    const std::string where = name + ":" + std::to_string(lineno);
    for (int i = 0; i < length + 1; ++i) {
      if (!std::getline(cells, cell, ',')) {
        throw validation_error(where + ": expected " +
                               std::to_string(length + 1) + " columns");
      }
      long long value = 0;
      try {
        std::size_t used = 0;
        value = std::stoll(cell, &used);
        if (used != cell.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw validation_error(where + ": bad integer '" + cell + "'");
      }
      if (i < length) {
        if (value != -1 && value != 1) {
          throw validation_error(where + ": spin value " +
                                 std::to_string(value) + " is not -1 or +1");
        }
        sample.spins.push_back(static_cast<int>(value));
      } else {
        if (value < 1) {
          throw validation_error(where + ": count must be >= 1");
        }
        sample.count = value;
      }
    }
    if (std::getline(cells, cell, ',')) {
      throw validation_error(where + ": too many columns");
    }
    archive.samples.push_back(std::move(sample));
  }
  archive.validate();
  return archive;
}

ShotArchive ingest(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".json") {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open archive " + path.string());
    return archive_from_json(in, path.string());
  }
  if (ext == ".csv") {
    std::ifstream rows(path);
    if (!rows) throw io_error("cannot open archive " + path.string());
    std::filesystem::path meta_path = path;
    meta_path.replace_extension(".meta.json");
    std::ifstream meta(meta_path);
    if (!meta) {
      throw io_error("cannot open archive sidecar " + meta_path.string());
    }
    return archive_from_csv(rows, meta, path.string());
  }
  throw validation_error("archive " + path.string() +
                         " must end in .json or .csv");
}

void write_archive_json(const ShotArchive& archive,
                        const std::filesystem::path& path) {
  json j;
  j["meta"] = meta_to_json(archive.meta);
  json samples = json::array();
  for (const auto& s : archive.samples) {
    samples.push_back({{"spins", s.spins}, {"count", s.count}});
  }
  j["samples"] = std::move(samples);
  std::ofstream out(path);
  if (!out) throw io_error("cannot write archive " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw io_error("failed writing archive " + path.string());
}

void write_archive_csv(const ShotArchive& archive,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write archive " + path.string());
  for (int i = 1; i <= archive.meta.length; ++i) out << 's' << i << ',';
  out << "count\n";
  for (const auto& s : archive.samples) {
    for (int v : s.spins) out << v << ',';
    out << s.count << '\n';
  }
  if (!out) throw io_error("failed writing archive " + path.string());

  std::filesystem::path meta_path = path;
  meta_path.replace_extension(".meta.json");
  std::ofstream meta(meta_path);
  if (!meta) throw io_error("cannot write sidecar " + meta_path.string());
  meta << meta_to_json(archive.meta).dump(2) << '\n';
  if (!meta) throw io_error("failed writing sidecar " + meta_path.string());
}

}  // namespace ftbench::bench
