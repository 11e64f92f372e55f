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

#include "glopt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

namespace glopt {

GroundedSystem::GroundedSystem(std::shared_ptr<const Graph> graph,
                               std::vector<int> grounded)
    : graph_(std::move(graph)), grounded_(std::move(grounded)) {
  const int n = graph_->nodeCount();
  std::sort(grounded_.begin(), grounded_.end());
  grounded_.erase(std::unique(grounded_.begin(), grounded_.end()),
                  grounded_.end());
  if (grounded_.empty() || static_cast<int>(grounded_.size()) >= n)
    throw std::invalid_argument("grounded set must satisfy 1 <= |S| < n");
  for (int s : grounded_)
    if (s < 0 || s >= n)
      throw std::invalid_argument("grounded node out of range");

  freeIndex_.assign(n, -1);
  addedCount_.assign(n, 0);
  for (int s : grounded_) freeIndex_[s] = -2;
  for (int v = 0; v < n; ++v) {
    if (freeIndex_[v] == -1) {
      freeIndex_[v] = static_cast<int>(freeNodes_.size());
      freeNodes_.push_back(v);
    }
  }
  for (int s : grounded_) freeIndex_[s] = -1;
}

bool GroundedSystem::hasAddedEdge(int grounded, int nonGrounded) const {
  for (auto [t, i] : added_)
    if (t == grounded && i == nonGrounded) return true;
  return false;
}

GroundedSystem GroundedSystem::withEdge(int grounded, int nonGrounded) const {
  if (!isGrounded(grounded) || isGrounded(nonGrounded))
    throw std::invalid_argument(
        "added edge must join one grounded and one non-grounded node");
  if (graph_->hasEdge(grounded, nonGrounded))
    throw std::invalid_argument("added edge already exists in the graph");
  if (hasAddedEdge(grounded, nonGrounded))
    throw std::invalid_argument("edge already added");
  GroundedSystem out = *this;
  out.added_.emplace_back(grounded, nonGrounded);
  ++out.addedCount_[grounded];
  ++out.addedCount_[nonGrounded];
  return out;
}

Eigen::VectorXd GroundedSystem::diagonal() const {
  Eigen::VectorXd d(dim());
  for (int idx = 0; idx < dim(); ++idx) {
    int v = freeNodes_[idx];
    d[idx] = graph_->degree(v) + addedCount_[v];
  }
  return d;
}

void GroundedSystem::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  if (x.size() != dim()) throw std::invalid_argument("dimension mismatch");
  y.resize(dim());
  for (int idx = 0; idx < dim(); ++idx) {
    int v = freeNodes_[idx];
    double acc = (graph_->degree(v) + addedCount_[v]) * x[idx];
    for (int w : graph_->neighbors(v)) {
      int j = freeIndex_[w];
      if (j >= 0) acc -= x[j];
    }
    y[idx] = acc;
  }
}

Eigen::VectorXd GroundedSystem::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y;
  apply(x, y);
  return y;
}

Eigen::MatrixXd GroundedSystem::denseMatrix() const {
  const int d = dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int idx = 0; idx < d; ++idx) {
    int v = freeNodes_[idx];
    m(idx, idx) = graph_->degree(v) + addedCount_[v];
    for (int w : graph_->neighbors(v)) {
      int j = freeIndex_[w];
      if (j >= 0) m(idx, j) = -1.0;
    }
  }
  return m;
}

bool GroundedSystem::followerConnected() const {
  if (dim() == 0) return false;
  std::vector<char> seen(graph_->nodeCount(), 0);
  std::queue<int> q;
  q.push(freeNodes_[0]);
  seen[freeNodes_[0]] = 1;
  int count = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    ++count;
    for (int v : graph_->neighbors(u)) {
      if (!seen[v] && !isGrounded(v)) {
        seen[v] = 1;
        q.push(v);
      }
    }
  }
  return count == dim();
}

namespace {

// Jacobi-preconditioned CG on a matrix-free SPD operator.
// If `deflate` is set the solve is restricted to the subspace orthogonal
// to the all-ones vector (for the singular follower Laplacian).
template <typename ApplyFn>
Eigen::VectorXd conjugate_gradient(const ApplyFn& applyOp,
                                   const Eigen::VectorXd& diag,
                                   const Eigen::VectorXd& b, double tol,
                                   int maxIter, bool deflate) {
  const int n = static_cast<int>(b.size());
  Eigen::VectorXd invDiag = diag.cwiseMax(1e-300).cwiseInverse();
  auto project = [&](Eigen::VectorXd& v) {
    if (deflate) v.array() -= v.mean();
  };

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r = b;
  project(r);
  double bNorm = r.norm();
  if (bNorm == 0.0) return x;
  Eigen::VectorXd z = invDiag.cwiseProduct(r);
  project(z);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  Eigen::VectorXd Ap(n);
  for (int it = 0; it < maxIter; ++it) {
    applyOp(p, Ap);
    double pAp = p.dot(Ap);
    if (pAp <= 0.0) break;
    double alpha = rz / pAp;
    x += alpha * p;
    r -= alpha * Ap;
    if (deflate && (it % 32) == 31) project(r);
    if (r.norm() <= tol * bNorm) break;
    z = invDiag.cwiseProduct(r);
    project(z);
    double rzNew = r.dot(z);
    p = z + (rzNew / rz) * p;
    rz = rzNew;
  }
  project(x);
  return x;
}

Eigen::VectorXd seeded_start_vector(int n, std::uint64_t seed) {
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  std::mt19937_64 gen(seed);
  for (int i = 0; i < n; ++i) {
    double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
    x[i] += 1e-4 * (2.0 * u - 1.0);
  }
  x.normalize();
  return x;
}

void fix_sign(Eigen::VectorXd& u) {
  if (u.sum() < 0) u = -u;
}

}  // namespace

EigenPair smallest_eigenpair(const GroundedSystem& sys,
                             const SolverSettings& settings) {
  const int d = sys.dim();
  if (d == 0) throw std::invalid_argument("zero-dimension grounded system");

  if (d <= settings.denseThreshold) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sys.denseMatrix());
    EigenPair pair;
    pair.u = es.eigenvectors().col(0);
    fix_sign(pair.u);
    pair.u.normalize();
    Eigen::VectorXd lu = sys.apply(pair.u);
    pair.lambda = pair.u.dot(lu);
    pair.residualNorm = (lu - pair.lambda * pair.u).norm();
    return pair;
  }

  const double eps = settings.epsilon;
  Eigen::VectorXd diag = sys.diagonal();
  auto applyOp = [&sys](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    sys.apply(x, y);
  };

  Eigen::VectorXd x = seeded_start_vector(d, settings.seed);
  double rho = x.dot(sys.apply(x));
  EigenPair best;
  best.lambda = rho;
  best.u = x;
  best.residualNorm = (sys.apply(x) - rho * x).norm();

  for (int sweep = 0; sweep < settings.maxIterations; ++sweep) {
    x = conjugate_gradient(applyOp, diag, x, settings.cgTolerance,
                           4 * d + 200, /*deflate=*/false);
    double norm = x.norm();
    if (norm == 0.0) break;
    x /= norm;
    Eigen::VectorXd lx = sys.apply(x);
    double rhoNew = x.dot(lx);
    double resid = (lx - rhoNew * x).norm();
    if (resid < best.residualNorm) {
      best.lambda = rhoNew;
      best.u = x;
      best.residualNorm = resid;
    }
    bool rayleighSettled =
        std::abs(rhoNew - rho) <= (eps / 4.0) * std::abs(rhoNew);
    rho = rhoNew;
    if (rayleighSettled && resid <= eps * rhoNew) {
      EigenPair pair;
      pair.u = x;
      fix_sign(pair.u);
      pair.u.normalize();
      Eigen::VectorXd lu = sys.apply(pair.u);
      pair.lambda = pair.u.dot(lu);
      pair.residualNorm = (lu - pair.lambda * pair.u).norm();
      return pair;
    }
  }
  fix_sign(best.u);
  throw SolverError("smallest_eigenpair: no convergence after " +
                        std::to_string(settings.maxIterations) + " sweeps",
                    std::move(best));
}

double lambda2_follower_subgraph(const GroundedSystem& sys,
                                 const SolverSettings& settings) {
  if (!sys.followerConnected())
    throw std::runtime_error(
        "follower subgraph disconnected: bounds valid only when G[V\\S] is "
        "connected");
  const int d = sys.dim();
  if (d == 1) throw std::invalid_argument("follower subgraph has one node");

  // Laplacian of G[V \ S]: grounded-neighbor and added-edge contributions
  // removed from the diagonal.
  Eigen::VectorXd followerDeg(d);
  for (int idx = 0; idx < d; ++idx) {
    int v = sys.freeNode(idx);
    int deg = 0;
    for (int w : sys.graph().neighbors(v))
      if (!sys.isGrounded(w)) ++deg;
    followerDeg[idx] = deg;
  }
  auto applyOp = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
    y.resize(d);
    for (int idx = 0; idx < d; ++idx) {
      int v = sys.freeNode(idx);
      double acc = followerDeg[idx] * x[idx];
      for (int w : sys.graph().neighbors(v)) {
        int j = sys.freeIndex(w);
        if (j >= 0) acc -= x[j];
      }
      y[idx] = acc;
    }
  };

  if (d <= settings.denseThreshold) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (int idx = 0; idx < d; ++idx) {
      int v = sys.freeNode(idx);
      m(idx, idx) = followerDeg[idx];
      for (int w : sys.graph().neighbors(v)) {
        int j = sys.freeIndex(w);
        if (j >= 0) m(idx, j) = -1.0;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    return es.eigenvalues()[1];
  }

  // Inverse power iteration deflated against the constant null vector.
  const double eps = settings.epsilon;
  Eigen::VectorXd x = seeded_start_vector(d, settings.seed + 17);
  x.array() -= x.mean();
  x.normalize();
  Eigen::VectorXd lx(d);
  applyOp(x, lx);
  double rho = x.dot(lx);
  for (int sweep = 0; sweep < settings.maxIterations; ++sweep) {
    x = conjugate_gradient(applyOp, followerDeg, x, settings.cgTolerance,
                           4 * d + 200, /*deflate=*/true);
    double norm = x.norm();
    if (norm == 0.0) break;
    x /= norm;
    applyOp(x, lx);
    double rhoNew = x.dot(lx);
    double resid = (lx - rhoNew * x).norm();
    bool settled = std::abs(rhoNew - rho) <= (eps / 4.0) * std::abs(rhoNew);
    rho = rhoNew;
    if (settled && resid <= eps * rhoNew) return rhoNew;
  }
  EigenPair best;
  best.lambda = rho;
  best.u = x;
  throw SolverError("lambda2_follower_subgraph: no convergence",
                    std::move(best));
}

bool check_degree_lower_bound(const GroundedSystem& sys, const EigenPair& pair,
                              double epsilon) {
  double minDeg = std::numeric_limits<double>::infinity();
  for (int idx = 0; idx < sys.dim(); ++idx) {
    int v = sys.freeNode(idx);
    minDeg = std::min(minDeg,
                      static_cast<double>(sys.graph().degree(v) + sys.addedAt(v)));
  }
  return minDeg >= pair.lambda - epsilon * pair.lambda;
}

}  // namespace glopt
