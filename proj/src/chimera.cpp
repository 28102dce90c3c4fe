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

#include "ftbench/chimera.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

namespace ftbench::chimera {

namespace {

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

ChimeraGraph::ChimeraGraph(int rows, int cols, int shore)
    : rows_(rows), cols_(cols), shore_(shore) {
  if (rows_ < 1 || cols_ < 1 || shore_ < 1) {
    throw validation_error("chimera dimensions must be at least 1");
  }
  adjacency_.resize(static_cast<std::size_t>(node_count()));

  auto connect = [&](int a, int b) {
    adjacency_[static_cast<std::size_t>(a)].push_back(b);
    adjacency_[static_cast<std::size_t>(b)].push_back(a);
    edge_keys_.insert(edge_key(a, b));
  };

  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      // Intra-cell K_{t,t} between the two shores.
      for (int i = 0; i < shore_; ++i) {
        for (int j = 0; j < shore_; ++j) {
          connect(node_id(r, c, 0, i), node_id(r, c, 1, j));
        }
      }
      // Vertical couplers on shore 0, horizontal on shore 1.
      if (r + 1 < rows_) {
        for (int k = 0; k < shore_; ++k) {
          connect(node_id(r, c, 0, k), node_id(r + 1, c, 0, k));
        }
      }
      if (c + 1 < cols_) {
        for (int k = 0; k < shore_; ++k) {
          connect(node_id(r, c, 1, k), node_id(r, c + 1, 1, k));
        }
      }
    }
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

int ChimeraGraph::node_count() const { return rows_ * cols_ * 2 * shore_; }

long long ChimeraGraph::edge_count() const {
  return static_cast<long long>(edge_keys_.size());
}

int ChimeraGraph::node_id(int row, int col, int shore_side, int k) const {
  return (row * cols_ + col) * 2 * shore_ + shore_side * shore_ + k;
}

const std::vector<int>& ChimeraGraph::neighbors(int node) const {
  if (node < 0 || node >= node_count()) {
    throw validation_error("node id out of range");
  }
  return adjacency_[static_cast<std::size_t>(node)];
}

bool ChimeraGraph::has_edge(int a, int b) const {
  if (a < 0 || b < 0 || a >= node_count() || b >= node_count()) return false;
  return edge_keys_.count(edge_key(a, b)) > 0;
}

std::vector<std::pair<int, int>> ChainEmbedding::couplers() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(nodes.size() > 0 ? nodes.size() - 1 : 0);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    out.emplace_back(nodes[i], nodes[i + 1]);
  }
  return out;
}

ChainEmbedding random_chain(const ChimeraGraph& graph, int length,
                            std::uint64_t seed, int max_restarts) {
  if (length < 2) throw validation_error("chain length must be at least 2");
  if (length > graph.node_count()) {
    throw validation_error("chain length " + std::to_string(length) +
                           " exceeds the node count " +
                           std::to_string(graph.node_count()));
  }

  std::mt19937_64 rng(seed);
  std::vector<char> visited(static_cast<std::size_t>(graph.node_count()), 0);
  std::vector<int> candidates;

  for (int attempt = 0; attempt <= max_restarts; ++attempt) {
    std::fill(visited.begin(), visited.end(), 0);
    ChainEmbedding chain;
    chain.nodes.reserve(static_cast<std::size_t>(length));

    int current = static_cast<int>(rng() % static_cast<std::uint64_t>(graph.node_count()));
    chain.nodes.push_back(current);
    visited[static_cast<std::size_t>(current)] = 1;

    while (static_cast<int>(chain.nodes.size()) < length) {
      candidates.clear();
      for (int next : graph.neighbors(current)) {
        if (!visited[static_cast<std::size_t>(next)]) candidates.push_back(next);
      }
      if (candidates.empty()) break;  // dead end; restart
      current = candidates[rng() % candidates.size()];
      chain.nodes.push_back(current);
      visited[static_cast<std::size_t>(current)] = 1;
    }
    if (static_cast<int>(chain.nodes.size()) == length) return chain;
  }
  throw embedding_error(
      "random_chain: exhausted " + std::to_string(max_restarts) +
      " restarts embedding a length-" + std::to_string(length) +
      " chain in a " + std::to_string(graph.rows()) + "x" +
      std::to_string(graph.cols()) + " graph with " +
      std::to_string(graph.node_count()) + " nodes (seed " +
      std::to_string(seed) + ")");
}

EmbeddingReport validate_embedding(const ChimeraGraph& graph,
                                   const ChainEmbedding& chain) {
  std::unordered_set<int> seen;
  for (std::size_t i = 0; i < chain.nodes.size(); ++i) {
    const int node = chain.nodes[i];
    if (node < 0 || node >= graph.node_count()) {
      return {false, "node " + std::to_string(node) + " at position " +
                         std::to_string(i) + " is out of range"};
    }
    if (!seen.insert(node).second) {
      return {false, "node " + std::to_string(node) + " repeats at position " +
                         std::to_string(i)};
    }
    if (i > 0 && !graph.has_edge(chain.nodes[i - 1], node)) {
      return {false, "hop " + std::to_string(chain.nodes[i - 1]) + " -> " +
                         std::to_string(node) + " at position " +
                         std::to_string(i) + " is not an edge"};
    }
  }
  return {};
}

std::string embedding_to_json(const ChainEmbedding& chain) {
  nlohmann::json j;
  j["nodes"] = chain.nodes;
  auto couplers = nlohmann::json::array();
  for (const auto& [a, b] : chain.couplers()) {
    couplers.push_back({a, b});
  }
  j["couplers"] = std::move(couplers);
  return j.dump(2);
}

void write_embedding_json(const ChainEmbedding& chain,
                          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write embedding " + path.string());
  out << embedding_to_json(chain) << '\n';
  if (!out) throw io_error("failed writing embedding " + path.string());
}

}  // namespace ftbench::chimera
