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
#include "glopt/optimize.hpp"
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

Graph complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
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

// Brute-force best single edge using only the independent dense oracle.
std::pair<Candidate, double> oracle_best_single(const GroundedSystem& sys) {
  CandidateSet q = build_candidates(sys);
  Candidate best{-1, -1};
  double bestLam = -1.0;
  std::vector<int> grounded = sys.groundedNodes();
  for (const auto& c : q.edges) {
    double lam = glopt_test::oracle_min_eigenvalue(
        glopt_test::dense_grounded_laplacian(sys.graph(), grounded,
                                             {{c.grounded, c.nonGrounded}}));
    if (lam > bestLam + 1e-12) {
      bestLam = lam;
      best = c;
    }
  }
  return {best, bestLam};
}

}  // namespace

TEST_CASE("build_candidates") {
  SUBCASE("five-node example") {
    CandidateSet q = build_candidates(fig1_system());
    REQUIRE(q.edges.size() == 3);
    CHECK(q.edges[0].nonGrounded == 2);
    CHECK(q.edges[1].nonGrounded == 3);
    CHECK(q.edges[2].nonGrounded == 4);
    for (const auto& c : q.edges) CHECK(c.grounded == 0);
  }
  SUBCASE("grounded star center is saturated") {
    CHECK_THROWS_AS(build_candidates(glopt_test::make_system(star(6), {0})),
                    SaturatedError);
  }
  SUBCASE("grounded path end skips its neighbor") {
    CandidateSet q = build_candidates(glopt_test::make_system(path(8), {0}));
    REQUIRE(q.edges.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(q.edges[i].nonGrounded == i + 2);
  }
  SUBCASE("added edges leave the candidate set") {
    GroundedSystem sys = fig1_system().withEdge(0, 3);
    CandidateSet q = build_candidates(sys);
    REQUIRE(q.edges.size() == 2);
    CHECK(q.edges[0].nonGrounded == 2);
    CHECK(q.edges[1].nonGrounded == 4);
  }
}

TEST_CASE("subset_count") {
  CHECK(subset_count(5, 2) == 10);
  CHECK(subset_count(6, 6) == 1);
  CHECK(subset_count(4, 5) == 0);
  CHECK(subset_count(60, 5) == 5461512);
  CHECK(subset_count(1000, 500) == UINT64_MAX);  // clamped overflow
}

TEST_CASE("exhaustive_optimum") {
  GroundedSystem fig1 = fig1_system();
  SUBCASE("matches an independent dense oracle on random instances") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 10; ++trial) {
      int n = 6 + static_cast<int>(gen() % 8);
      Graph g = glopt_test::random_connected_graph(n, 1.0, gen);
      auto sys = glopt_test::make_system(g, {0});
      CandidateSet q = build_candidates(sys);
      if (q.edges.empty()) continue;
      auto [oracleEdge, oracleLam] = oracle_best_single(sys);
      RunResult r = exhaustive_optimum(sys, 1);
      CHECK(std::abs(r.finalLambda - oracleLam) < 1e-10);
      CHECK(r.steps[0].edge.first == oracleEdge.grounded);
      CHECK(r.steps[0].edge.second == oracleEdge.nonGrounded);
    }
  }
  SUBCASE("tie rule returns the first subset in candidate order") {
    // All three k=2 pairs on the five-node example tie at the optimum.
    RunResult r = exhaustive_optimum(fig1, 2);
    REQUIRE(r.steps.size() == 2);
    CHECK(r.steps[0].edge == std::pair<int, int>{0, 2});
    CHECK(r.steps[1].edge == std::pair<int, int>{0, 3});
  }
  SUBCASE("k equals the whole candidate set") {
    RunResult r = exhaustive_optimum(fig1, 3);
    double all = glopt_test::oracle_min_eigenvalue(
        glopt_test::dense_grounded_laplacian(fig1.graph(), {0},
                                             {{0, 2}, {0, 3}, {0, 4}}));
    CHECK(std::abs(r.finalLambda - all) < 1e-10);
  }
  SUBCASE("grounded path single-edge gains match the published values") {
    auto sys = glopt_test::make_system(path(8), {0});
    RunResult r = exhaustive_optimum(sys, 1);
    CHECK(r.steps[0].edge == std::pair<int, int>{0, 6});
    CHECK(std::abs(r.finalLambda - 0.1837) < 1e-3);
    double lam02 = glopt_test::oracle_min_eigenvalue(
        glopt_test::dense_grounded_laplacian(sys.graph(), {0}, {{0, 2}}));
    CHECK(std::abs(lam02 - 0.0644) < 1e-3);
    CHECK(r.finalLambda > lam02);
  }
  SUBCASE("budget cap raises") {
    std::mt19937_64 gen(4);
    Graph g = glopt_test::random_connected_graph(30, 1.0, gen);
    auto sys = glopt_test::make_system(g, {0});
    CHECK_THROWS_AS(exhaustive_optimum(sys, 5, 10), BudgetError);
  }
}

TEST_CASE("greedy_exact") {
  SUBCASE("k=1 is identical to exhaustive on random instances") {
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 15; ++trial) {
      int n = 6 + static_cast<int>(gen() % 15);
      Graph g = glopt_test::random_connected_graph(n, 1.2, gen);
      auto sys = glopt_test::make_system(g, {0});
      RunResult ex = exhaustive_optimum(sys, 1);
      RunResult gr = greedy_exact(sys, 1);
      CHECK(gr.steps[0].edge == ex.steps[0].edge);
      CHECK(std::abs(gr.finalLambda - ex.finalLambda) < 1e-9);
    }
  }
  SUBCASE("secular fast path agrees with per-candidate dense solves") {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 8; ++trial) {
      int n = 8 + static_cast<int>(gen() % 12);
      Graph g = glopt_test::random_connected_graph(n, 1.4, gen);
      auto sys = glopt_test::make_system(g, {0, 1});
      RunResult r = greedy_exact(sys, 3);
      // Replay: at each step the chosen edge must achieve the oracle max.
      GroundedSystem cur = sys;
      for (const Step& s : r.steps) {
        auto [bestEdge, bestLam] = oracle_best_single(cur);
        double chosenLam = glopt_test::oracle_min_eigenvalue(
            glopt_test::dense_grounded_laplacian(
                cur.graph(), cur.groundedNodes(),
                [&] {
                  auto e = cur.addedEdges();
                  e.push_back(s.edge);
                  return e;
                }()));
        CHECK(chosenLam >= bestLam - 1e-10);
        CHECK(std::abs(s.lambdaAfter - chosenLam) < 1e-9);
        cur = cur.withEdge(s.edge.first, s.edge.second);
      }
    }
  }
  SUBCASE("trace is monotone and scores are the realized gains") {
    std::mt19937_64 gen(41);
    Graph g = glopt_test::random_connected_graph(20, 1.5, gen);
    auto sys = glopt_test::make_system(g, {0});
    RunResult r = greedy_exact(sys, 4);
    double prev = smallest_eigenpair(sys).lambda;
    for (const Step& s : r.steps) {
      CHECK(s.lambdaAfter >= prev - 2e-3);
      CHECK(std::abs(s.score - (s.lambdaAfter - prev)) < 1e-9);
      prev = s.lambdaAfter;
    }
  }
}

TEST_CASE("greedy_fast") {
  SUBCASE("five-node example reaches the exhaustive optimum at k=2") {
    GroundedSystem fig1 = fig1_system();
    RunResult ex = exhaustive_optimum(fig1, 2);
    RunResult fast = greedy_fast(fig1, 2);
    CHECK(std::abs(fast.finalLambda - ex.finalLambda) < 2e-3);
  }
  SUBCASE("grounded path k=1 lands within 10% of exact greedy") {
    auto sys = glopt_test::make_system(path(8), {0});
    RunResult exact = greedy_exact(sys, 1);
    RunResult fast = greedy_fast(sys, 1);
    CHECK(fast.finalLambda >= 0.9 * exact.finalLambda);
  }
  SUBCASE("symmetric cycle candidates tie to the smallest id") {
    auto sys = glopt_test::make_system(cycle(9), {0});
    RunResult fast = greedy_fast(sys, 1);
    // Nodes 4 and 5 tie at the maximal score by mirror symmetry.
    CHECK(fast.steps[0].edge == std::pair<int, int>{0, 4});
  }
  SUBCASE("scores are non-negative with connected followers") {
    std::mt19937_64 gen(61);
    for (int trial = 0; trial < 10; ++trial) {
      Graph g = glopt_test::random_connected_graph(15, 2.0, gen);
      auto sys = glopt_test::make_system(g, {0});
      if (!sys.followerConnected()) continue;
      RunResult fast = greedy_fast(sys, 2);
      for (const Step& s : fast.steps) CHECK(s.score >= -1e-9);
    }
  }
}

TEST_CASE("perturbation gain estimators") {
  GroundedSystem fig1 = fig1_system();
  EigenPair pair = smallest_eigenpair(fig1);
  SUBCASE("symmetric non-grounded pair estimates zero gain") {
    CHECK(estimate_gain_nongrounded_pair(fig1, pair, 2, 3) < 1e-12);
  }
  SUBCASE("estimate bounded by the larger squared component") {
    std::mt19937_64 gen(71);
    Graph g = glopt_test::random_connected_graph(12, 1.5, gen);
    auto sys = glopt_test::make_system(g, {0});
    if (sys.followerConnected()) {
      EigenPair p = smallest_eigenpair(sys);
      for (int a = 1; a < 12; ++a)
        for (int b = a + 1; b < 12; ++b) {
          double est = estimate_gain_nongrounded_pair(sys, p, a, b);
          double cap = std::max(p.u[sys.freeIndex(a)] * p.u[sys.freeIndex(a)],
                                p.u[sys.freeIndex(b)] * p.u[sys.freeIndex(b)]);
          CHECK(est <= cap + 1e-12);
        }
    }
  }
  SUBCASE("grounding estimate is the squared component") {
    auto sys = glopt_test::make_system(path(8), {0});
    EigenPair p = smallest_eigenpair(sys);
    CHECK(estimate_gain_grounding(sys, p, 7) >
          estimate_gain_grounding(sys, p, 2));
    double total = 0.0;
    for (int i = 1; i < 8; ++i) total += estimate_gain_grounding(sys, p, i);
    CHECK(std::abs(total - 1.0) < 1e-9);  // unit-norm eigenvector
  }
  SUBCASE("grounded arguments rejected") {
    CHECK_THROWS_AS(estimate_gain_grounding(fig1, pair, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_gain_nongrounded_pair(fig1, pair, 0, 2),
                    std::invalid_argument);
  }
}

TEST_CASE("interlacing upper bound dominates exact single-edge gains") {
  std::mt19937_64 gen(83);
  for (int trial = 0; trial < 12; ++trial) {
    int n = 6 + static_cast<int>(gen() % 25);
    Graph g = glopt_test::random_connected_graph(n, 1.3, gen);
    auto sys = glopt_test::make_system(g, {0});
    double base = glopt_test::oracle_min_eigenvalue(
        glopt_test::dense_grounded_laplacian(g, {0}));
    for (int idx = 0; idx < sys.dim() && sys.dim() >= 2; ++idx) {
      int i = sys.freeNode(idx);
      double bound = interlacing_upper_bound(sys, i);
      CHECK(bound >= -1e-12);
      if (!sys.graph().hasEdge(0, i)) {
        double gain = glopt_test::oracle_min_eigenvalue(
                          glopt_test::dense_grounded_laplacian(g, {0}, {{0, i}})) -
                      base;
        CHECK(bound >= gain - 1e-10);
      }
    }
  }
}

TEST_CASE("ratio bounds") {
  SUBCASE("complete graph on ten nodes, one grounded") {
    auto sys = glopt_test::make_system(complete(10), {0});
    RatioBounds b = ratio_bounds(sys);
    CHECK(std::abs(b.lambda2 - 9.0) < 1e-9);
    CHECK(std::abs(b.gammaLower - 1.0 / 90.0) < 1e-9);
    CHECK(std::abs(b.alphaUpper - 89.0 / 90.0) < 1e-9);
    CHECK(b.informative);
    CHECK(b.approxRatioLower > 0.0);
    CHECK(std::abs(b.alphaUpper - (1.0 - b.gammaLower)) < 1e-15);
  }
  SUBCASE("sparse path is vacuous") {
    auto sys = glopt_test::make_system(path(12), {0});
    RatioBounds b = ratio_bounds(sys);
    CHECK(b.boundTerm >= 1.0);
    CHECK_FALSE(b.informative);
  }
  SUBCASE("denser graph beats its sparser spanning subgraph") {
    auto dense = glopt_test::make_system(complete(12), {0});
    // Spanning subgraph: drop a matching among the followers so the bound
    // stays informative on both instances.
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 12; ++i)
      for (int j = i + 1; j < 12; ++j) {
        bool dropped = j == i + 1 && i % 2 == 1;  // (1,2),(3,4),...,(9,10)
        if (!dropped) edges.emplace_back(i, j);
      }
    auto sparse = glopt_test::make_system(
        Graph::fromEdges(12, std::move(edges)), {0});
    RatioBounds bd = ratio_bounds(dense);
    RatioBounds bs = ratio_bounds(sparse);
    CHECK(bd.informative);
    CHECK(bs.informative);
    CHECK(bd.gammaLower > bs.gammaLower);
  }
  SUBCASE("disconnected followers rejected") {
    auto sys = glopt_test::make_system(path(5), {2});
    CHECK_THROWS(ratio_bounds(sys));
  }
}

TEST_CASE("problem equivalence on the five-node example") {
  GroundedSystem fig1 = fig1_system();
  EquivalenceReport rep = verify_problem_equivalence(fig1, 2);
  CHECK(rep.equal);
  CHECK(std::abs(rep.lambdaFull - rep.lambdaPruned) < 1e-9);
  EquivalenceReport rep0 = verify_problem_equivalence(fig1, 0);
  CHECK(rep0.equal);
}
