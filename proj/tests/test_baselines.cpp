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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "doctest.h"
#include "glopt/baselines.hpp"
#include "test_util.hpp"

using namespace glopt;

namespace {

Graph path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::fromEdges(n, std::move(edges));
}

Graph cycle(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::fromEdges(n, std::move(edges));
}

Graph star(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
  return Graph::fromEdges(n, std::move(edges));
}

GroundedSystem fig1_system() {
  Graph g = load_edge_list(glopt_test::data_path("fig1.edges"));
  return glopt_test::make_system(g, {0});
}

// Independent betweenness oracle: for every source/target pair, count
// shortest paths through v from the two BFS path-count tables.
std::vector<double> betweenness_oracle(const Graph& g) {
  const int n = g.nodeCount();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n));
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n));
  for (int s = 0; s < n; ++s) {
    std::vector<int>& d = dist[s];
    std::vector<double>& sig = sigma[s];
    std::fill(d.begin(), d.end(), -1);
    std::fill(sig.begin(), sig.end(), 0.0);
    d[s] = 0;
    sig[s] = 1.0;
    std::vector<int> frontier = {s};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int v : frontier)
        for (int w : g.neighbors(v)) {
          if (d[w] < 0) {
            d[w] = d[v] + 1;
            next.push_back(w);
          }
          if (d[w] == d[v] + 1) sig[w] += sig[v];
        }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      frontier = next;
    }
  }
  std::vector<double> bc(n, 0.0);
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      if (dist[s][t] < 0) continue;
      for (int v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        if (dist[s][v] + dist[t][v] == dist[s][t])
          bc[v] += sigma[s][v] * sigma[t][v] / sigma[s][t];
      }
    }
  return bc;
}

}  // namespace

TEST_CASE("degree baseline") {
  SUBCASE("skips the hub already tied to ground") {
    // Node 1 has the top degree but is adjacent to the only grounded node.
    RunResult r = degree_baseline(fig1_system(), 1);
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].edge == std::pair<int, int>{0, 2});
  }
  SUBCASE("regular graph ties break by id") {
    RunResult r = degree_baseline(glopt_test::make_system(cycle(8), {0}), 2);
    CHECK(r.steps[0].edge == std::pair<int, int>{0, 2});
    CHECK(r.steps[1].edge == std::pair<int, int>{0, 3});
  }
  SUBCASE("grounded path picks the first interior node") {
    RunResult r = degree_baseline(glopt_test::make_system(path(8), {0}), 1);
    CHECK(r.steps[0].edge == std::pair<int, int>{0, 2});
    CHECK(std::abs(r.finalLambda - 0.0644) < 1e-3);
  }
  SUBCASE("errors when fewer than k nodes are eligible") {
    CHECK_THROWS_AS(degree_baseline(fig1_system(), 4), MethodError);
  }
}

TEST_CASE("eigenvector centrality and baseline") {
  SUBCASE("star center dominates") {
    CentralityScores s = eigenvector_centrality(star(8));
    for (int i = 1; i < 8; ++i) CHECK(s.perNode[0] > s.perNode[i]);
  }
  SUBCASE("cycle is uniform, baseline ties by id") {
    CentralityScores s = eigenvector_centrality(cycle(7));
    for (int i = 1; i < 7; ++i)
      CHECK(std::abs(s.perNode[i] - s.perNode[0]) < 1e-6);
    RunResult r =
        eigenvector_baseline(glopt_test::make_system(cycle(7), {0}), 1);
    CHECK(r.steps[0].edge == std::pair<int, int>{0, 2});
  }
  SUBCASE("karate top node matches a dense eigendecomposition") {
    Graph g = load_edge_list(glopt_test::data_path("karate.edges"));
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.nodeCount(), g.nodeCount());
    for (auto [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    Eigen::VectorXd lead = es.eigenvectors().col(g.nodeCount() - 1);
    if (lead.sum() < 0) lead = -lead;
    int oracleTop;
    lead.maxCoeff(&oracleTop);
    CentralityScores s = eigenvector_centrality(g);
    int top = static_cast<int>(std::max_element(s.perNode.begin(),
                                                s.perNode.end()) -
                               s.perNode.begin());
    CHECK(top == oracleTop);
    for (int i = 0; i < g.nodeCount(); ++i)
      CHECK(std::abs(s.perNode[i] - lead[i]) < 1e-5);
  }
}

TEST_CASE("betweenness centrality and baseline") {
  SUBCASE("path middle node is maximal") {
    CentralityScores s = betweenness_centrality(path(3));
    CHECK(s.perNode[1] > s.perNode[0]);
    CHECK(std::abs(s.perNode[1] - 1.0) < 1e-12);
  }
  SUBCASE("star center is maximal") {
    CentralityScores s = betweenness_centrality(star(6));
    for (int i = 1; i < 6; ++i) CHECK(s.perNode[0] > s.perNode[i]);
  }
  SUBCASE("karate matches the brute-force path-counting oracle") {
    Graph g = load_edge_list(glopt_test::data_path("karate.edges"));
    CentralityScores s = betweenness_centrality(g);
    std::vector<double> oracle = betweenness_oracle(g);
    for (int i = 0; i < g.nodeCount(); ++i)
      CHECK(std::abs(s.perNode[i] - oracle[i]) < 1e-9);
  }
}

TEST_CASE("closeness centrality and baseline") {
  SUBCASE("path middle node is maximal") {
    CentralityScores s = closeness_centrality(path(3));
    CHECK(s.perNode[1] > s.perNode[0]);
    CHECK(std::abs(s.perNode[1] - 1.0) < 1e-12);
  }
  SUBCASE("vertex-transitive graph ties by id") {
    RunResult r = closeness_baseline(glopt_test::make_system(cycle(9), {0}), 1);
    CHECK(r.steps[0].edge == std::pair<int, int>{0, 2});
  }
  SUBCASE("karate matches an in-test BFS oracle") {
    Graph g = load_edge_list(glopt_test::data_path("karate.edges"));
    CentralityScores s = closeness_centrality(g);
    for (int v = 0; v < g.nodeCount(); ++v) {
      int src[1] = {v};
      auto d = bfs_distances(g, src);
      double total = 0.0;
      for (int w = 0; w < g.nodeCount(); ++w) total += d[w];
      CHECK(std::abs(s.perNode[v] - (g.nodeCount() - 1) / total) < 1e-12);
    }
  }
}

TEST_CASE("kcenter baseline") {
  SUBCASE("grounded path reaches a distant node first") {
    auto sys = glopt_test::make_system(path(8), {0});
    int src[1] = {0};
    auto dist = bfs_distances(sys.graph(), src);
    RunResult r = kcenter_baseline(sys, 1);
    CHECK(dist[r.steps[0].edge.second] >= 4);
  }
  SUBCASE("far pendant attracts the first edge") {
    // Clique 0..4 with a tail 4-5-6; grounded 0.
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) edges.emplace_back(i, j);
    edges.emplace_back(4, 5);
    edges.emplace_back(5, 6);
    auto sys = glopt_test::make_system(Graph::fromEdges(7, std::move(edges)), {0});
    RunResult r = kcenter_baseline(sys, 1);
    CHECK(r.steps[0].edge.second >= 5);
  }
  SUBCASE("saturated system raises upstream") {
    CHECK_THROWS_AS(kcenter_baseline(glopt_test::make_system(star(5), {0}), 1),
                    SaturatedError);
  }
}

TEST_CASE("eigen-approx baseline") {
  SUBCASE("grounded path attaches the far end") {
    RunResult r =
        eigen_approx_baseline(glopt_test::make_system(path(8), {0}), 1);
    CHECK(r.steps[0].edge == std::pair<int, int>{0, 7});
  }
  SUBCASE("symmetric candidates tie by id") {
    // Nodes 4 and 5 share the maximal eigenvector component.
    RunResult r =
        eigen_approx_baseline(glopt_test::make_system(cycle(9), {0}), 1);
    CHECK(r.steps[0].edge == std::pair<int, int>{0, 4});
  }
  SUBCASE("frozen witness where eigen-approx and fast greedy diverge") {
    std::vector<std::pair<int, int>> edges = {
        {0, 1}, {0, 2}, {0, 5}, {0, 6}, {1, 3}, {1, 4}, {1, 8}, {2, 3},
        {2, 4}, {2, 5}, {2, 6}, {3, 5}, {4, 6}, {4, 7}, {5, 7}, {6, 7}};
    auto sys = glopt_test::make_system(Graph::fromEdges(9, std::move(edges)), {0});
    RunResult approx = eigen_approx_baseline(sys, 1);
    RunResult fast = greedy_fast(sys, 1);
    CHECK(approx.steps[0].edge.second == 8);
    CHECK(fast.steps[0].edge.second == 4);
  }
}

TEST_CASE("all baselines stay feasible and monotone") {
  std::mt19937_64 gen(91);
  using Runner = RunResult (*)(const GroundedSystem&, int,
                               const SolverSettings&);
  const Runner runners[] = {degree_baseline,     eigenvector_baseline,
                            betweenness_baseline, closeness_baseline,
                            kcenter_baseline,     eigen_approx_baseline};
  SolverSettings settings;
  for (int trial = 0; trial < 6; ++trial) {
    int n = 10 + static_cast<int>(gen() % 15);
    Graph g = glopt_test::random_connected_graph(n, 1.4, gen);
    auto sys = glopt_test::make_system(g, {0, 1});
    CandidateSet q = build_candidates(sys);
    int k = std::min<int>(3, static_cast<int>(q.edges.size()));
    for (Runner run : runners) {
      RunResult r;
      try {
        r = run(sys, k, settings);
      } catch (const MethodError&) {
        continue;  // fewer eligible nodes than k is a legal outcome
      }
      double prev = smallest_eigenpair(sys).lambda;
      std::vector<std::pair<int, int>> seen;
      for (const Step& s : r.steps) {
        auto [t, i] = s.edge;
        CHECK(sys.isGrounded(t));
        CHECK_FALSE(sys.isGrounded(i));
        CHECK_FALSE(g.hasEdge(t, i));
        CHECK(std::find(seen.begin(), seen.end(), s.edge) == seen.end());
        seen.push_back(s.edge);
        CHECK(s.lambdaAfter >= prev - 2e-3);
        prev = s.lambdaAfter;
      }
    }
  }
}
