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

#ifndef GLOPT_BASELINES_HPP
#define GLOPT_BASELINES_HPP

#include "glopt/optimize.hpp"
#include "glopt/spectral.hpp"

namespace glopt {

enum class CentralityKind { degree, eigenvector, betweenness, closeness };

struct CentralityScores {
  CentralityKind kind;
  std::vector<double> perNode;
};

CentralityScores degree_centrality(const Graph& g);
/// Power iteration on the 0.5-shifted adjacency matrix (shift avoids
/// bipartite oscillation); scores unit-normalized and non-negative.
CentralityScores eigenvector_centrality(const Graph& g, double tol = 1e-8,
                                        int maxSweeps = 10000);
CentralityScores betweenness_centrality(const Graph& g);
CentralityScores closeness_centrality(const Graph& g);

/// One-shot rankings: k top-ranked non-grounded nodes, each attached to the
/// lowest-id grounded node it is not yet adjacent to.
RunResult degree_baseline(const GroundedSystem& sys, int k,
                          const SolverSettings& settings = {});
RunResult eigenvector_baseline(const GroundedSystem& sys, int k,
                               const SolverSettings& settings = {});
RunResult betweenness_baseline(const GroundedSystem& sys, int k,
                               const SolverSettings& settings = {});
RunResult closeness_baseline(const GroundedSystem& sys, int k,
                             const SolverSettings& settings = {});

/// Iterative: each round picks the candidate edge minimizing the maximum
/// hop distance from the grounded set.
RunResult kcenter_baseline(const GroundedSystem& sys, int k,
                           const SolverSettings& settings = {});

/// Iterative: each round attaches the node with the largest component of
/// the current smallest eigenvector.
RunResult eigen_approx_baseline(const GroundedSystem& sys, int k,
                                const SolverSettings& settings = {});

}  // namespace glopt

#endif  // GLOPT_BASELINES_HPP
