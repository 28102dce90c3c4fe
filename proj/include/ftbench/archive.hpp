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

#include <filesystem>
#include <iosfwd>

#include "ftbench/common.hpp"
#include "ftbench/model.hpp"

namespace ftbench::bench {

struct ArchiveMeta {
  int length = 0;
  std::vector<double> couplings;  // size length - 1
  bool uniform_coupling = false;  // serialize "J" as a single number
  double tau_us = 0.0;
  std::string machine;
  std::string note;  // seed / provenance

  model::ChainSpec chain() const;
};

struct ShotSample {
  std::vector<int> spins;  // entries in {-1, +1}
  long long count = 0;
};

/// Bitstring shot data with counts, from simulation or hardware readout.
struct ShotArchive {
  ArchiveMeta meta;
  std::vector<ShotSample> samples;

  long long total_shots() const;
  void validate() const;
};

/// Reads an archive from .json or .csv (schema decided by extension).
/// CSV metadata lives in a sidecar `<stem>.meta.json` next to the file.
ShotArchive ingest(const std::filesystem::path& path);

ShotArchive archive_from_json(std::istream& in, const std::string& name);
ShotArchive archive_from_csv(std::istream& rows, std::istream& meta,
                             const std::string& name);

void write_archive_json(const ShotArchive& archive,
                        const std::filesystem::path& path);
void write_archive_csv(const ShotArchive& archive,
                       const std::filesystem::path& path);

}  // namespace ftbench::bench
