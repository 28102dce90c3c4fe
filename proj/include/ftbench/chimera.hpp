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
#include <unordered_set>

#include "ftbench/common.hpp"

namespace ftbench::chimera {

/// Grid of complete-bipartite K_{t,t} cells.  Shore 0 carries the vertical
/// inter-cell couplers (same column, adjacent rows), shore 1 the horizontal
/// ones.  Node ids are (row * cols + col) * 2t + shore * t + k.
class ChimeraGraph {
 public:
  ChimeraGraph(int rows, int cols, int shore = 4);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int shore() const { return shore_; }

  int node_count() const;
  long long edge_count() const;

  int node_id(int row, int col, int shore_side, int k) const;
  const std::vector<int>& neighbors(int node) const;
  bool has_edge(int a, int b) const;

 private:
  int rows_, cols_, shore_;
  std::vector<std::vector<int>> adjacency_;
  std::unordered_set<std::uint64_t> edge_keys_;
};

/// A simple path of qubits; consecutive nodes must be graph edges.
struct ChainEmbedding {
  std::vector<int> nodes;

  std::vector<std::pair<int, int>> couplers() const;
};

/// Seeded self-avoiding walk: random start, random unvisited neighbor each
/// step, full restart on a dead end.  Throws embedding_error with
/// diagnostics once `max_restarts` restarts are exhausted.
ChainEmbedding random_chain(const ChimeraGraph& graph, int length,
                            std::uint64_t seed, int max_restarts = 10000);

struct EmbeddingReport {
  bool ok = true;
  std::string violation;  // first violation, empty when ok
};

EmbeddingReport validate_embedding(const ChimeraGraph& graph,
                                   const ChainEmbedding& chain);

/// `{"nodes": [...], "couplers": [[a,b], ...]}`
void write_embedding_json(const ChainEmbedding& chain,
                          const std::filesystem::path& path);
std::string embedding_to_json(const ChainEmbedding& chain);

}  // namespace ftbench::chimera
