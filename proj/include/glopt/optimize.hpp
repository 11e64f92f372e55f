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

#ifndef GLOPT_OPTIMIZE_HPP
#define GLOPT_OPTIMIZE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "glopt/spectral.hpp"

namespace glopt {

/// One eligible edge: a grounded endpoint and a non-grounded endpoint.
struct Candidate {
  int grounded;
  int nonGrounded;
};

/// Pruned candidate set Q = (S x (V \ S)) \ (E u T), ordered by
/// (non-grounded id, grounded id).
struct CandidateSet {
  std::vector<Candidate> edges;
};

struct SaturatedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CandidateSet build_candidates(const GroundedSystem& sys);

struct Step {
  std::pair<int, int> edge;  // dense node ids
  double lambdaAfter = 0.0;
  double score = 0.0;
  double elapsedMs = 0.0;
};

struct RunResult {
  std::string method;
  std::vector<Step> steps;
  double finalLambda = 0.0;
};

/// A selection method failed mid-run; carries the trace built so far.
struct MethodError : std::runtime_error {
  MethodError(const std::string& what, RunResult r)
      : std::runtime_error(what), partial(std::move(r)) {}
  RunResult partial;
};

struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact optimum over all C(|Q|, k) subsets of the pruned candidate set.
/// Ties go to the lexicographically smallest subset under the candidate
/// ordering. Throws BudgetError when the subset count exceeds `cap`.
RunResult exhaustive_optimum(const GroundedSystem& sys, int k,
                             std::uint64_t cap = 1'000'000);

/// Greedy selection with exact eigenvalue evaluation of every candidate at
/// every step. Ties: smaller non-grounded id, then smaller grounded id.
RunResult greedy_exact(const GroundedSystem& sys, int k,
                       const SolverSettings& settings = {});

/// Greedy selection scored by the first-order eigengain estimate
/// 2 u_i sum_{j in N_i \ S} u_j. One eigensolve per iteration plus one
/// extra solve so the trace reports true eigenvalues.
RunResult greedy_fast(const GroundedSystem& sys, int k,
                      const SolverSettings& settings = {});

/// First-order estimate (u_i - u_j)^2 of the eigengain from joining two
/// non-grounded nodes.
double estimate_gain_nongrounded_pair(const GroundedSystem& sys,
                                      const EigenPair& pair, int i, int j);

/// First-order estimate u_i^2 of the eigengain from attaching non-grounded
/// node i to a grounded node.
double estimate_gain_grounding(const GroundedSystem& sys,
                               const EigenPair& pair, int i);

/// Exact interlacing gap lambda(L_{-S}(T) with row/col i removed) minus
/// lambda(L_{-S}(T)); a validation oracle, computed densely.
double interlacing_upper_bound(const GroundedSystem& sys, int i,
                               const SolverSettings& settings = {});

struct RatioBounds {
  double gammaLower = 0.0;
  double alphaUpper = 0.0;
  double approxRatioLower = 0.0;
  double lambda2 = 0.0;
  double boundTerm = 0.0;  // 2 s sqrt(n - s) / lambda2
  bool informative = false;
};

/// Lower bound on the submodularity ratio and upper bound on the curvature
/// from the algebraic connectivity of the follower subgraph.
RatioBounds ratio_bounds(const GroundedSystem& sys,
                         const SolverSettings& settings = {});

struct EquivalenceReport {
  double lambdaFull = 0.0;     // optimum over all non-edges
  double lambdaPruned = 0.0;   // optimum over grounded-incident non-edges
  bool equal = false;          // within 1e-9
  std::vector<std::pair<int, int>> bestFull;
  std::vector<std::pair<int, int>> bestPruned;
};

/// Compares exhaustive optima over the full and the pruned candidate sets.
/// Disagreements are reported, not raised.
EquivalenceReport verify_problem_equivalence(const GroundedSystem& sys, int k,
                                             std::uint64_t cap = 1'000'000);

/// C(n, k) clamped at 2^63-1; used for budget checks.
std::uint64_t subset_count(std::uint64_t n, std::uint64_t k);

}  // namespace glopt

#endif  // GLOPT_OPTIMIZE_HPP
