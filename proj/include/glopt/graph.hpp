// Copyright 2026 The Authors.
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

#ifndef GLOPT_GRAPH_HPP
#define GLOPT_GRAPH_HPP

#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace glopt {

using NodeId = int;

/// Hop distance assigned to nodes a BFS never reaches.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Immutable simple undirected graph with sorted adjacency lists.
/// Node ids are dense 0-based; `rawLabel` maps them back to the labels
/// found in the input file.
class Graph {
 public:
  Graph() = default;

  /// Builds a simple graph from an edge list over dense ids [0, n).
  /// Self-loops and duplicates are dropped silently.
  static Graph fromEdges(int n, std::vector<std::pair<int, int>> edges);

  int nodeCount() const { return n_; }
  std::int64_t edgeCount() const { return m_; }
  int degree(int i) const { return static_cast<int>(adj_[i].size()); }
  const std::vector<int>& neighbors(int i) const { return adj_[i]; }
  bool hasEdge(int u, int v) const;

  std::int64_t rawLabel(int i) const { return rawLabels_[i]; }
  const std::vector<std::int64_t>& rawLabels() const { return rawLabels_; }
  void setRawLabels(std::vector<std::int64_t> labels);

  /// Canonical edge list: (u, v) with u < v, sorted, in dense ids.
  std::vector<std::pair<int, int>> edges() const;

 private:
  int n_ = 0;
  std::int64_t m_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::int64_t> rawLabels_;
};

struct LoadStats {
  std::int64_t selfLoopsDropped = 0;
  std::int64_t duplicatesDropped = 0;
};

/// Reads a whitespace-separated edge list. Lines starting with '#' or '%'
/// are comments; extra tokens after the first two are ignored. Raw labels
/// are compacted to dense ids sorted by raw label.
Graph load_edge_list(const std::string& path, LoadStats* stats = nullptr);

/// Writes the canonical edge list (raw labels, one edge per line).
void write_edge_list(const Graph& g, std::ostream& out);

struct SubgraphResult {
  Graph graph;
  std::vector<int> oldToNew;  // -1 for dropped nodes
};

/// Induced subgraph on the largest connected component. Ties between
/// equally sized components go to the one containing the smallest raw id.
SubgraphResult largest_connected_component(const Graph& g);

/// Induced subgraph on `keep` (dense ids), with compacted ids.
SubgraphResult induced_subgraph(const Graph& g, const std::vector<int>& keep);

/// Multi-source BFS hop distances; kUnreachable where no path exists.
std::vector<int> bfs_distances(const Graph& g, std::span<const int> sources);

}  // namespace glopt

#endif  // GLOPT_GRAPH_HPP
