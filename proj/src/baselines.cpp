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

#include "glopt/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <queue>
#include <stack>

namespace glopt {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Lowest-id grounded node not adjacent to `node` in E; -1 if saturated.
int attach_target(const GroundedSystem& sys, int node) {
  for (int t : sys.groundedNodes())
    if (!sys.graph().hasEdge(t, node) && !sys.hasAddedEdge(t, node)) return t;
  return -1;
}

RunResult run_one_shot_ranking(const GroundedSystem& sys, int k,
                               const SolverSettings& settings,
                               const std::string& name,
                               const CentralityScores& scores) {
  std::vector<int> order(sys.freeNodes());
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return scores.perNode[a] > scores.perNode[b] ||
           (scores.perNode[a] == scores.perNode[b] && a < b);
  });

  RunResult result;
  result.method = name;
  GroundedSystem cur = sys;
  auto t0 = Clock::now();
  for (int node : order) {
    if (static_cast<int>(result.steps.size()) == k) break;
    int t = attach_target(cur, node);
    if (t < 0) continue;  // adjacent to every grounded node
    cur = cur.withEdge(t, node);
    try {
      EigenPair after = smallest_eigenpair(cur, settings);
      Step s;
      s.edge = {t, node};
      s.lambdaAfter = after.lambda;
      s.score = scores.perNode[node];
      s.elapsedMs = ms_since(t0);
      result.steps.push_back(s);
      result.finalLambda = after.lambda;
    } catch (const SolverError& e) {
      throw MethodError(name + ": " + e.what(), result);
    }
  }
  if (static_cast<int>(result.steps.size()) < k)
    throw MethodError(name + ": fewer than k eligible nodes", result);
  return result;
}

}  // namespace

CentralityScores degree_centrality(const Graph& g) {
  CentralityScores s{CentralityKind::degree, {}};
  s.perNode.resize(g.nodeCount());
  for (int i = 0; i < g.nodeCount(); ++i) s.perNode[i] = g.degree(i);
  return s;
}

CentralityScores eigenvector_centrality(const Graph& g, double tol,
                                        int maxSweeps) {
  const int n = g.nodeCount();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(n));
  Eigen::VectorXd y(n);
  for (int sweep = 0; sweep < maxSweeps; ++sweep) {
    for (int i = 0; i < n; ++i) {
      double acc = 0.5 * x[i];
      for (int j : g.neighbors(i)) acc += x[j];
      y[i] = acc;
    }
    y.normalize();
    if ((y - x).norm() < tol) {
      x = y;
      break;
    }
    x = y;
  }
  if (x.sum() < 0) x = -x;
  x = x.cwiseMax(0.0);
  x.normalize();
  CentralityScores s{CentralityKind::eigenvector, {}};
  s.perNode.assign(x.data(), x.data() + n);
  return s;
}

CentralityScores betweenness_centrality(const Graph& g) {
  const int n = g.nodeCount();
  std::vector<double> bc(n, 0.0);
  std::vector<int> dist(n), sigma(n);
  std::vector<double> delta(n);
  std::vector<std::vector<int>> preds(n);
  std::vector<int> order;
  order.reserve(n);

  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();
    order.clear();

    std::queue<int> q;
    dist[s] = 0;
    sigma[s] = 1;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      order.push_back(v);
      for (int w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int w = *it;
      for (int v : preds[w])
        delta[v] += (static_cast<double>(sigma[v]) / sigma[w]) * (1.0 + delta[w]);
      if (w != s) bc[w] += delta[w];
    }
  }
  // Undirected: each pair counted twice.
  for (double& b : bc) b /= 2.0;
  return {CentralityKind::betweenness, std::move(bc)};
}

CentralityScores closeness_centrality(const Graph& g) {
  const int n = g.nodeCount();
  std::vector<double> cc(n, 0.0);
  for (int s = 0; s < n; ++s) {
    int src[1] = {s};
    auto dist = bfs_distances(g, src);
    double total = 0.0;
    bool reachable = true;
    for (int v = 0; v < n; ++v) {
      if (v == s) continue;
      if (dist[v] == kUnreachable) {
        reachable = false;
        break;
      }
      total += dist[v];
    }
    cc[s] = (reachable && total > 0) ? (n - 1) / total : 0.0;
  }
  return {CentralityKind::closeness, std::move(cc)};
}

RunResult degree_baseline(const GroundedSystem& sys, int k,
                          const SolverSettings& settings) {
  return run_one_shot_ranking(sys, k, settings, "degree",
                              degree_centrality(sys.graph()));
}

RunResult eigenvector_baseline(const GroundedSystem& sys, int k,
                               const SolverSettings& settings) {
  return run_one_shot_ranking(sys, k, settings, "eigenvector",
                              eigenvector_centrality(sys.graph()));
}

RunResult betweenness_baseline(const GroundedSystem& sys, int k,
                               const SolverSettings& settings) {
  return run_one_shot_ranking(sys, k, settings, "betweenness",
                              betweenness_centrality(sys.graph()));
}

RunResult closeness_baseline(const GroundedSystem& sys, int k,
                             const SolverSettings& settings) {
  return run_one_shot_ranking(sys, k, settings, "closeness",
                              closeness_centrality(sys.graph()));
}

namespace {

// Max hop distance from S to any non-grounded node, with the added edges
// (and one trial edge) overlaid on the graph.
int eccentricity_with_overlay(const GroundedSystem& sys,
                              const std::vector<std::pair<int, int>>& overlay) {
  const Graph& g = sys.graph();
  const int n = g.nodeCount();
  std::vector<std::vector<int>> extra(n);
  for (auto [a, b] : overlay) {
    extra[a].push_back(b);
    extra[b].push_back(a);
  }
  std::vector<int> dist(n, kUnreachable);
  std::queue<int> q;
  for (int s : sys.groundedNodes()) {
    dist[s] = 0;
    q.push(s);
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    auto visit = [&](int v) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    };
    for (int v : g.neighbors(u)) visit(v);
    for (int v : extra[u]) visit(v);
  }
  int ecc = 0;
  for (int idx = 0; idx < sys.dim(); ++idx) {
    int d = dist[sys.freeNode(idx)];
    if (d == kUnreachable) return kUnreachable;
    ecc = std::max(ecc, d);
  }
  return ecc;
}

}  // namespace

RunResult kcenter_baseline(const GroundedSystem& sys, int k,
                           const SolverSettings& settings) {
  CandidateSet q = build_candidates(sys);
  if (k > static_cast<int>(q.edges.size()))
    throw std::invalid_argument("k exceeds candidate set size");

  RunResult result;
  result.method = "kcenter";
  GroundedSystem cur = sys;
  std::vector<Candidate> pool = q.edges;
  auto t0 = Clock::now();
  for (int step = 0; step < k; ++step) {
    std::vector<std::pair<int, int>> overlay(cur.addedEdges());
    overlay.emplace_back(0, 0);  // slot for the trial edge
    int bestIdx = -1, bestEcc = kUnreachable;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      overlay.back() = {pool[c].grounded, pool[c].nonGrounded};
      int ecc = eccentricity_with_overlay(cur, overlay);
      if (ecc < bestEcc) {
        bestEcc = ecc;
        bestIdx = static_cast<int>(c);
      }
    }
    Candidate chosen = pool[bestIdx];
    pool.erase(pool.begin() + bestIdx);
    cur = cur.withEdge(chosen.grounded, chosen.nonGrounded);
    try {
      EigenPair after = smallest_eigenpair(cur, settings);
      Step s;
      s.edge = {chosen.grounded, chosen.nonGrounded};
      s.lambdaAfter = after.lambda;
      s.score = -static_cast<double>(bestEcc);
      s.elapsedMs = ms_since(t0);
      result.steps.push_back(s);
      result.finalLambda = after.lambda;
    } catch (const SolverError& e) {
      throw MethodError(std::string("kcenter: ") + e.what(), result);
    }
  }
  return result;
}

RunResult eigen_approx_baseline(const GroundedSystem& sys, int k,
                                const SolverSettings& settings) {
  RunResult result;
  result.method = "eigenapprox";
  GroundedSystem cur = sys;
  auto t0 = Clock::now();
  for (int step = 0; step < k; ++step) {
    try {
      EigenPair pair = smallest_eigenpair(cur, settings);
      int bestNode = -1;
      double bestU = -std::numeric_limits<double>::infinity();
      for (int idx = 0; idx < cur.dim(); ++idx) {
        int node = cur.freeNode(idx);
        if (attach_target(cur, node) < 0) continue;
        if (pair.u[idx] > bestU) {
          bestU = pair.u[idx];
          bestNode = node;
        }
      }
      if (bestNode < 0)
        throw MethodError("eigenapprox: no eligible node", result);
      int t = attach_target(cur, bestNode);
      cur = cur.withEdge(t, bestNode);
      EigenPair after = smallest_eigenpair(cur, settings);
      Step s;
      s.edge = {t, bestNode};
      s.lambdaAfter = after.lambda;
      s.score = bestU;
      s.elapsedMs = ms_since(t0);
      result.steps.push_back(s);
      result.finalLambda = after.lambda;
    } catch (const SolverError& e) {
      throw MethodError(std::string("eigenapprox: ") + e.what(), result);
    }
  }
  return result;
}

}  // namespace glopt
