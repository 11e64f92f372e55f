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

#include "glopt/optimize.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace glopt {

namespace {

// Two eigenvalues this close are treated as tied when picking argmax; keeps
// the documented deterministic tie rules stable under fp noise.
constexpr double kTieTol = 1e-12;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Smallest eigenvalue of M + e_r e_r^T given the eigendecomposition of M,
// via the rank-one secular equation f(mu) = 1 + sum_j w_j / (eval_j - mu).
double rank_one_grounded_min(const Eigen::VectorXd& evals,
                             const Eigen::MatrixXd& evecs, int r) {
  const int n = static_cast<int>(evals.size());
  if (n == 1) return evals[0] + evecs(0, 0) * evecs(0, 0);

  const double scale = std::max(1.0, std::abs(evals[n - 1]));
  const double clusterTol = 1e-10 * scale;
  const double lam1 = evals[0];

  int next = 1;
  while (next < n && evals[next] <= lam1 + clusterTol) ++next;
  // A repeated smallest eigenvalue survives the rank-one update.
  if (next >= 2) return lam1;
  if (next == n) return lam1;  // all eigenvalues clustered

  double w1 = evecs(r, 0) * evecs(r, 0);
  if (w1 <= 1e-14) return lam1;

  const double hi0 = evals[next];
  auto f = [&](double mu) {
    double acc = 1.0;
    for (int j = 0; j < n; ++j) {
      double w = evecs(r, j) * evecs(r, j);
      acc += w / (evals[j] - mu);
    }
    return acc;
  };
  double lo = lam1, hi = hi0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * scale; ++it) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Smallest eigenvalue of the grounded Laplacian after adding `extra` edges
// on top of sys; handles grounded-grounded, grounded-free and free-free
// pairs (dense assembly, small instances only).
double dense_lambda_with_edges(const GroundedSystem& sys,
                               const Eigen::MatrixXd& base,
                               const std::vector<std::pair<int, int>>& extra) {
  Eigen::MatrixXd m = base;
  for (auto [u, v] : extra) {
    int iu = sys.freeIndex(u), iv = sys.freeIndex(v);
    if (iu < 0 && iv < 0) continue;  // both grounded: no effect
    if (iu >= 0 && iv >= 0) {
      m(iu, iu) += 1.0;
      m(iv, iv) += 1.0;
      m(iu, iv) -= 1.0;
      m(iv, iu) -= 1.0;
    } else {
      int i = iu >= 0 ? iu : iv;
      m(i, i) += 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

struct ExhaustiveBest {
  double lambda = -1.0;
  std::vector<int> pick;
};

// Lexicographic enumeration of k-subsets of `edges`; first subset wins ties.
ExhaustiveBest exhaustive_over(const GroundedSystem& sys,
                               const std::vector<std::pair<int, int>>& edges,
                               int k, std::uint64_t cap) {
  const std::uint64_t total = subset_count(edges.size(), k);
  if (total > cap)
    throw BudgetError("exhaustive search over " + std::to_string(total) +
                      " subsets exceeds cap " + std::to_string(cap));
  Eigen::MatrixXd base = sys.denseMatrix();
  ExhaustiveBest best;
  if (k == 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(base,
                                                      Eigen::EigenvaluesOnly);
    best.lambda = es.eigenvalues()[0];
    return best;
  }
  const int q = static_cast<int>(edges.size());
  if (k > q) throw std::invalid_argument("k exceeds candidate count");

  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<std::pair<int, int>> subset(k);
  while (true) {
    for (int i = 0; i < k; ++i) subset[i] = edges[idx[i]];
    double lam = dense_lambda_with_edges(sys, base, subset);
    if (lam > best.lambda + kTieTol) {
      best.lambda = lam;
      best.pick = idx;
    }
    int i = k - 1;
    while (i >= 0 && idx[i] == q - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

std::vector<std::pair<int, int>> candidate_pairs(const CandidateSet& q) {
  std::vector<std::pair<int, int>> out;
  out.reserve(q.edges.size());
  for (const auto& c : q.edges) out.emplace_back(c.grounded, c.nonGrounded);
  return out;
}

}  // namespace

std::uint64_t subset_count(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double acc = 1.0L;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc *= static_cast<long double>(n - k + i);
    acc /= static_cast<long double>(i);
    if (acc > 9.2e18L) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc + 0.5L);
}

CandidateSet build_candidates(const GroundedSystem& sys) {
  CandidateSet q;
  for (int idx = 0; idx < sys.dim(); ++idx) {
    int i = sys.freeNode(idx);
    for (int t : sys.groundedNodes()) {
      if (sys.graph().hasEdge(t, i)) continue;
      if (sys.hasAddedEdge(t, i)) continue;
      q.edges.push_back({t, i});
    }
  }
  if (q.edges.empty())
    throw SaturatedError(
        "candidate set is empty: every grounded/non-grounded pair already "
        "connected");
  return q;
}

RunResult exhaustive_optimum(const GroundedSystem& sys, int k,
                             std::uint64_t cap) {
  auto t0 = Clock::now();
  CandidateSet q = build_candidates(sys);
  auto pairs = candidate_pairs(q);
  if (k > static_cast<int>(pairs.size()))
    throw std::invalid_argument("k exceeds candidate set size");
  ExhaustiveBest best = exhaustive_over(sys, pairs, k, cap);

  RunResult result;
  result.method = "exhaustive";
  Eigen::MatrixXd base = sys.denseMatrix();
  std::vector<std::pair<int, int>> partial;
  for (int i = 0; i < k; ++i) {
    partial.push_back(pairs[best.pick[i]]);
    Step step;
    step.edge = pairs[best.pick[i]];
    step.lambdaAfter = dense_lambda_with_edges(sys, base, partial);
    step.score = step.lambdaAfter;
    step.elapsedMs = ms_since(t0);
    result.steps.push_back(step);
  }
  result.finalLambda =
      k == 0 ? dense_lambda_with_edges(sys, base, {}) : best.lambda;
  return result;
}

RunResult greedy_exact(const GroundedSystem& sys, int k,
                       const SolverSettings& settings) {
  CandidateSet q = build_candidates(sys);
  if (k > static_cast<int>(q.edges.size()))
    throw std::invalid_argument("k exceeds candidate set size");

  RunResult result;
  result.method = "greedy";
  GroundedSystem cur = sys;
  std::vector<Candidate> pool = q.edges;
  double lambdaPrev;
  try {
    lambdaPrev = smallest_eigenpair(cur, settings).lambda;
  } catch (const SolverError& e) {
    throw MethodError(std::string("greedy_exact: ") + e.what(), result);
  }

  for (int step = 0; step < k; ++step) {
    auto t0 = Clock::now();
    int bestIdx = -1;
    double bestLambda = -std::numeric_limits<double>::infinity();
    try {
      if (cur.dim() <= settings.denseThreshold) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cur.denseMatrix());
        const Eigen::VectorXd& evals = es.eigenvalues();
        const Eigen::MatrixXd& evecs = es.eigenvectors();
        for (std::size_t c = 0; c < pool.size(); ++c) {
          double lam =
              rank_one_grounded_min(evals, evecs, cur.freeIndex(pool[c].nonGrounded));
          if (lam > bestLambda + kTieTol) {
            bestLambda = lam;
            bestIdx = static_cast<int>(c);
          }
        }
      } else {
        for (std::size_t c = 0; c < pool.size(); ++c) {
          GroundedSystem trial = cur.withEdge(pool[c].grounded, pool[c].nonGrounded);
          double lam = smallest_eigenpair(trial, settings).lambda;
          if (lam > bestLambda + kTieTol) {
            bestLambda = lam;
            bestIdx = static_cast<int>(c);
          }
        }
      }

      Candidate chosen = pool[bestIdx];
      pool.erase(pool.begin() + bestIdx);
      cur = cur.withEdge(chosen.grounded, chosen.nonGrounded);

      EigenPair after = smallest_eigenpair(cur, settings);
      Step s;
      s.edge = {chosen.grounded, chosen.nonGrounded};
      s.lambdaAfter = after.lambda;
      s.score = after.lambda - lambdaPrev;
      s.elapsedMs = ms_since(t0);
      lambdaPrev = after.lambda;
      result.steps.push_back(s);
    } catch (const SolverError& e) {
      throw MethodError(std::string("greedy_exact: ") + e.what(), result);
    }
  }
  result.finalLambda = lambdaPrev;
  return result;
}

RunResult greedy_fast(const GroundedSystem& sys, int k,
                      const SolverSettings& settings) {
  CandidateSet q = build_candidates(sys);
  if (k > static_cast<int>(q.edges.size()))
    throw std::invalid_argument("k exceeds candidate set size");

  // N_i \ S never changes: added edges always attach to grounded nodes.
  std::vector<std::vector<int>> freeNbrs(sys.dim());
  for (int idx = 0; idx < sys.dim(); ++idx) {
    for (int w : sys.graph().neighbors(sys.freeNode(idx))) {
      int j = sys.freeIndex(w);
      if (j >= 0) freeNbrs[idx].push_back(j);
    }
  }

  RunResult result;
  result.method = "fast";
  GroundedSystem cur = sys;
  std::vector<Candidate> pool = q.edges;

  for (int step = 0; step < k; ++step) {
    auto t0 = Clock::now();
    try {
      EigenPair pair = smallest_eigenpair(cur, settings);
      Eigen::VectorXd score(sys.dim());
      for (int idx = 0; idx < sys.dim(); ++idx) {
        double acc = 0.0;
        for (int j : freeNbrs[idx]) acc += pair.u[j];
        score[idx] = 2.0 * pair.u[idx] * acc;
      }

      int bestIdx = -1;
      double bestScore = -std::numeric_limits<double>::infinity();
      double bestU = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < pool.size(); ++c) {
        int fi = cur.freeIndex(pool[c].nonGrounded);
        double sc = score[fi], ui = pair.u[fi];
        if (sc > bestScore + kTieTol ||
            (sc > bestScore - kTieTol && ui > bestU + kTieTol)) {
          bestScore = sc;
          bestU = ui;
          bestIdx = static_cast<int>(c);
        }
      }

      Candidate chosen = pool[bestIdx];
      pool.erase(pool.begin() + bestIdx);
      cur = cur.withEdge(chosen.grounded, chosen.nonGrounded);

      EigenPair after = smallest_eigenpair(cur, settings);
      Step s;
      s.edge = {chosen.grounded, chosen.nonGrounded};
      s.lambdaAfter = after.lambda;
      s.score = bestScore;
      s.elapsedMs = ms_since(t0);
      result.steps.push_back(s);
      result.finalLambda = after.lambda;
    } catch (const SolverError& e) {
      throw MethodError(std::string("greedy_fast: ") + e.what(), result);
    }
  }
  return result;
}

double estimate_gain_nongrounded_pair(const GroundedSystem& sys,
                                      const EigenPair& pair, int i, int j) {
  int fi = sys.freeIndex(i), fj = sys.freeIndex(j);
  if (fi < 0 || fj < 0)
    throw std::invalid_argument("both endpoints must be non-grounded");
  if (i == j) throw std::invalid_argument("endpoints must differ");
  double d = pair.u[fi] - pair.u[fj];
  return d * d;
}

double estimate_gain_grounding(const GroundedSystem& sys,
                               const EigenPair& pair, int i) {
  int fi = sys.freeIndex(i);
  if (fi < 0) throw std::invalid_argument("node must be non-grounded");
  return pair.u[fi] * pair.u[fi];
}

double interlacing_upper_bound(const GroundedSystem& sys, int i,
                               const SolverSettings&) {
  int fi = sys.freeIndex(i);
  if (fi < 0) throw std::invalid_argument("node must be non-grounded");
  const int d = sys.dim();
  if (d < 2)
    throw std::invalid_argument("system too small to remove a node");
  Eigen::MatrixXd m = sys.denseMatrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  double lam = es.eigenvalues()[0];

  Eigen::MatrixXd sub(d - 1, d - 1);
  for (int r = 0, rr = 0; r < d; ++r) {
    if (r == fi) continue;
    for (int c = 0, cc = 0; c < d; ++c) {
      if (c == fi) continue;
      sub(rr, cc) = m(r, c);
      ++cc;
    }
    ++rr;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esSub(sub,
                                                       Eigen::EigenvaluesOnly);
  return esSub.eigenvalues()[0] - lam;
}

RatioBounds ratio_bounds(const GroundedSystem& sys,
                         const SolverSettings& settings) {
  RatioBounds out;
  const double n = sys.graph().nodeCount();
  const double s = sys.groundedCount();
  out.lambda2 = lambda2_follower_subgraph(sys, settings);
  out.boundTerm = 2.0 * s * std::sqrt(n - s) / out.lambda2;
  double base = 1.0 - out.boundTerm;
  out.gammaLower = base * base / (s * n);
  out.alphaUpper = 1.0 - out.gammaLower;
  out.informative = out.boundTerm < 1.0;
  if (out.alphaUpper <= 0.0) {
    out.approxRatioLower = out.gammaLower;  // limit of (1-e^{-ag})/a as a->0
  } else {
    out.approxRatioLower =
        (1.0 - std::exp(-out.alphaUpper * out.gammaLower)) / out.alphaUpper;
  }
  return out;
}

EquivalenceReport verify_problem_equivalence(const GroundedSystem& sys, int k,
                                             std::uint64_t cap) {
  const Graph& g = sys.graph();
  std::vector<std::pair<int, int>> full;
  for (int u = 0; u < g.nodeCount(); ++u)
    for (int v = u + 1; v < g.nodeCount(); ++v)
      if (!g.hasEdge(u, v)) full.emplace_back(u, v);

  std::vector<std::pair<int, int>> pruned;
  for (auto [u, v] : full) {
    bool ug = sys.isGrounded(u), vg = sys.isGrounded(v);
    if (ug != vg) pruned.emplace_back(u, v);
  }

  EquivalenceReport rep;
  ExhaustiveBest bf = exhaustive_over(sys, full, k, cap);
  ExhaustiveBest bp = exhaustive_over(sys, pruned, k, cap);
  rep.lambdaFull = bf.lambda;
  rep.lambdaPruned = bp.lambda;
  for (int i : bf.pick) rep.bestFull.push_back(full[i]);
  for (int i : bp.pick) rep.bestPruned.push_back(pruned[i]);
  rep.equal = std::abs(rep.lambdaFull - rep.lambdaPruned) <= 1e-9;
  return rep;
}

}  // namespace glopt
