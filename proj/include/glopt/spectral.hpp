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

#ifndef GLOPT_SPECTRAL_HPP
#define GLOPT_SPECTRAL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "glopt/graph.hpp"

namespace glopt {

/// A graph together with a grounded node set S and a set T of added edges,
/// each joining one grounded and one non-grounded node. Exposes the grounded
/// Laplacian of the augmented graph as a matrix-free linear operator over
/// the non-grounded nodes.
class GroundedSystem {
 public:
  GroundedSystem(std::shared_ptr<const Graph> graph, std::vector<int> grounded);

  const Graph& graph() const { return *graph_; }
  std::shared_ptr<const Graph> graphPtr() const { return graph_; }

  int dim() const { return static_cast<int>(freeNodes_.size()); }
  int groundedCount() const { return static_cast<int>(grounded_.size()); }
  const std::vector<int>& groundedNodes() const { return grounded_; }
  bool isGrounded(int node) const { return freeIndex_[node] < 0; }

  /// Dense index of a non-grounded node (-1 for grounded nodes).
  int freeIndex(int node) const { return freeIndex_[node]; }
  int freeNode(int idx) const { return freeNodes_[idx]; }
  const std::vector<int>& freeNodes() const { return freeNodes_; }

  const std::vector<std::pair<int, int>>& addedEdges() const { return added_; }
  /// Number of added edges incident to a node.
  int addedAt(int node) const { return addedCount_[node]; }
  bool hasAddedEdge(int grounded, int nonGrounded) const;

  /// Copy of this system with one more (grounded, non-grounded) edge.
  GroundedSystem withEdge(int grounded, int nonGrounded) const;

  /// Diagonal of the grounded Laplacian, indexed by dense free index.
  Eigen::VectorXd diagonal() const;

  /// y = L_{-S}(T) x without materializing the matrix.
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  Eigen::MatrixXd denseMatrix() const;

  /// True if the subgraph induced on the non-grounded nodes is connected.
  bool followerConnected() const;

 private:
  std::shared_ptr<const Graph> graph_;
  std::vector<int> grounded_;             // sorted
  std::vector<std::pair<int, int>> added_;  // (grounded, nonGrounded)
  std::vector<int> addedCount_;           // per node
  std::vector<int> freeNodes_;            // dense index -> node
  std::vector<int> freeIndex_;            // node -> dense index or -1
};

struct EigenPair {
  double lambda = 0.0;
  Eigen::VectorXd u;
  double residualNorm = 0.0;
};

struct SolverSettings {
  double epsilon = 1e-3;       // relative eigenvalue tolerance
  int maxIterations = 2000;    // inverse-power sweeps
  int denseThreshold = 2048;   // n - s cutoff for the dense path
  double cgTolerance = 1e-8;   // relative residual for inner CG solves
  std::uint64_t seed = 1;      // perturbation of the start vector
};

struct SolverError : std::runtime_error {
  SolverError(const std::string& what, EigenPair best)
      : std::runtime_error(what), bestIterate(std::move(best)) {}
  EigenPair bestIterate;
};

/// Smallest eigenpair of L_{-S}(T). Dense eigendecomposition below
/// `denseThreshold`, otherwise inverse power iteration with Jacobi
/// preconditioned CG inner solves. The returned lambda satisfies
/// lambda <= (1 + epsilon) * lambda_min.
EigenPair smallest_eigenpair(const GroundedSystem& sys,
                             const SolverSettings& settings = {});

/// Algebraic connectivity of the Laplacian of the follower subgraph
/// G[V \ S]. Throws if the follower subgraph is disconnected.
double lambda2_follower_subgraph(const GroundedSystem& sys,
                                 const SolverSettings& settings = {});

/// Sanity assertion from the degree bound: the minimum augmented degree of
/// a non-grounded node can never be below the smallest eigenvalue.
bool check_degree_lower_bound(const GroundedSystem& sys, const EigenPair& pair,
                              double epsilon = 1e-3);

}  // namespace glopt

#endif  // GLOPT_SPECTRAL_HPP
