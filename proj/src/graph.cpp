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

#include "glopt/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <queue>
#include <sstream>

namespace glopt {

Graph Graph::fromEdges(int n, std::vector<std::pair<int, int>> edges) {
  Graph g;
  g.n_ = n;
  g.adj_.assign(n, {});
  for (auto& [u, v] : edges) {
    if (u == v) continue;
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (auto [u, v] : edges) {
    if (u == v) continue;
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
    ++g.m_;
  }
  for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
  g.rawLabels_.resize(n);
  for (int i = 0; i < n; ++i) g.rawLabels_[i] = i;
  return g;
}

bool Graph::hasEdge(int u, int v) const {
  const auto& nbrs = adj_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

void Graph::setRawLabels(std::vector<std::int64_t> labels) {
  rawLabels_ = std::move(labels);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int u = 0; u < n_; ++u)
    for (int v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph load_edge_list(const std::string& path, LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list: " + path);

  LoadStats local;
  std::vector<std::pair<std::int64_t, std::int64_t>> rawEdges;
  std::string line;
  std::int64_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::size_t pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#' || line[pos] == '%') continue;
    std::istringstream ls(line.substr(pos));
    std::int64_t a, b;
    if (!(ls >> a >> b)) {
      throw ParseError(path + ":" + std::to_string(lineNo) +
                       ": expected two integer tokens");
    }
    if (a < 0 || b < 0) {
      throw ParseError(path + ":" + std::to_string(lineNo) +
                       ": node labels must be non-negative");
    }
    if (a == b) {
      ++local.selfLoopsDropped;
      continue;
    }
    if (a > b) std::swap(a, b);
    rawEdges.emplace_back(a, b);
  }

  std::sort(rawEdges.begin(), rawEdges.end());
  auto last = std::unique(rawEdges.begin(), rawEdges.end());
  local.duplicatesDropped = rawEdges.end() - last;
  rawEdges.erase(last, rawEdges.end());

  // Compact raw labels to dense ids, ordered by raw label.
  std::map<std::int64_t, int> labelToId;
  for (auto [a, b] : rawEdges) {
    labelToId.emplace(a, 0);
    labelToId.emplace(b, 0);
  }
  std::vector<std::int64_t> labels;
  labels.reserve(labelToId.size());
  int next = 0;
  for (auto& [label, id] : labelToId) {
    id = next++;
    labels.push_back(label);
  }

  std::vector<std::pair<int, int>> edges;
  edges.reserve(rawEdges.size());
  for (auto [a, b] : rawEdges)
    edges.emplace_back(labelToId[a], labelToId[b]);

  Graph g = Graph::fromEdges(next, std::move(edges));
  g.setRawLabels(std::move(labels));
  if (stats) *stats = local;
  return g;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (auto [u, v] : g.edges()) {
    std::int64_t a = g.rawLabel(u), b = g.rawLabel(v);
    if (a > b) std::swap(a, b);
    out << a << ' ' << b << '\n';
  }
}

SubgraphResult induced_subgraph(const Graph& g, const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("induced_subgraph: empty keep set");
  std::vector<int> sortedKeep = keep;
  std::sort(sortedKeep.begin(), sortedKeep.end());
  sortedKeep.erase(std::unique(sortedKeep.begin(), sortedKeep.end()),
                   sortedKeep.end());

  std::vector<int> oldToNew(g.nodeCount(), -1);
  for (std::size_t i = 0; i < sortedKeep.size(); ++i)
    oldToNew[sortedKeep[i]] = static_cast<int>(i);

  std::vector<std::pair<int, int>> edges;
  for (int u : sortedKeep)
    for (int v : g.neighbors(u))
      if (u < v && oldToNew[v] >= 0)
        edges.emplace_back(oldToNew[u], oldToNew[v]);

  Graph sub = Graph::fromEdges(static_cast<int>(sortedKeep.size()), std::move(edges));
  std::vector<std::int64_t> labels(sortedKeep.size());
  for (std::size_t i = 0; i < sortedKeep.size(); ++i)
    labels[i] = g.rawLabel(sortedKeep[i]);
  sub.setRawLabels(std::move(labels));
  return {std::move(sub), std::move(oldToNew)};
}

SubgraphResult largest_connected_component(const Graph& g) {
  if (g.nodeCount() == 0)
    throw std::invalid_argument("largest_connected_component: empty graph");

  std::vector<int> comp(g.nodeCount(), -1);
  int numComp = 0;
  std::vector<std::int64_t> size;
  std::vector<std::int64_t> minRaw;
  for (int start = 0; start < g.nodeCount(); ++start) {
    if (comp[start] >= 0) continue;
    int c = numComp++;
    size.push_back(0);
    minRaw.push_back(g.rawLabel(start));
    std::queue<int> q;
    q.push(start);
    comp[start] = c;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      ++size[c];
      minRaw[c] = std::min(minRaw[c], g.rawLabel(u));
      for (int v : g.neighbors(u)) {
        if (comp[v] < 0) {
          comp[v] = c;
          q.push(v);
        }
      }
    }
  }

  int best = 0;
  for (int c = 1; c < numComp; ++c) {
    if (size[c] > size[best] ||
        (size[c] == size[best] && minRaw[c] < minRaw[best]))
      best = c;
  }

  std::vector<int> keep;
  for (int u = 0; u < g.nodeCount(); ++u)
    if (comp[u] == best) keep.push_back(u);
  return induced_subgraph(g, keep);
}

std::vector<int> bfs_distances(const Graph& g, std::span<const int> sources) {
  if (sources.empty())
    throw std::invalid_argument("bfs_distances: empty source set");
  std::vector<int> dist(g.nodeCount(), kUnreachable);
  std::queue<int> q;
  for (int s : sources) {
    if (dist[s] != kUnreachable) continue;
    dist[s] = 0;
    q.push(s);
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

}  // namespace glopt
