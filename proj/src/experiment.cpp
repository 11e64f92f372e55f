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

#include "glopt/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace glopt {

namespace {

using Clock = std::chrono::steady_clock;

std::string sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fixed3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

RunResult dispatch(const std::string& method, const GroundedSystem& sys,
                   const ExperimentConfig& cfg, const SolverSettings& settings) {
  if (method == "exhaustive") return exhaustive_optimum(sys, cfg.k, cfg.exhaustiveCap);
  if (method == "greedy") return greedy_exact(sys, cfg.k, settings);
  if (method == "fast") return greedy_fast(sys, cfg.k, settings);
  if (method == "degree") return degree_baseline(sys, cfg.k, settings);
  if (method == "eigenvector") return eigenvector_baseline(sys, cfg.k, settings);
  if (method == "betweenness") return betweenness_baseline(sys, cfg.k, settings);
  if (method == "closeness") return closeness_baseline(sys, cfg.k, settings);
  if (method == "kcenter") return kcenter_baseline(sys, cfg.k, settings);
  if (method == "eigenapprox") return eigen_approx_baseline(sys, cfg.k, settings);
  throw ConfigError("unknown method: " + method);
}

}  // namespace

const std::vector<std::string>& registered_methods() {
  static const std::vector<std::string> names = {
      "exhaustive", "greedy",    "fast",    "degree",      "eigenvector",
      "betweenness", "closeness", "kcenter", "eigenapprox"};
  return names;
}

std::vector<int> sample_grounded(int n, int count, std::uint64_t seed) {
  if (count < 1 || count >= n)
    throw ConfigError("grounded sample size must be in [1, n)");
  std::mt19937_64 gen(seed);
  std::vector<int> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = i;
  // Explicit Fisher-Yates prefix so the draw is identical across platforms;
  // std::uniform_int_distribution is implementation-defined.
  for (int i = 0; i < count; ++i) {
    std::uint64_t j = i + gen() % static_cast<std::uint64_t>(n - i);
    std::swap(ids[i], ids[j]);
  }
  ids.resize(count);
  std::sort(ids.begin(), ids.end());
  return ids;
}

bool ExperimentResult::anyFailure() const {
  return std::any_of(outcomes.begin(), outcomes.end(),
                     [](const MethodOutcome& o) { return !o.ok; });
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.k < 1) throw ConfigError("k must be at least 1");
  if (cfg.methods.empty()) throw ConfigError("no methods requested");
  const auto& known = registered_methods();
  for (const auto& m : cfg.methods)
    if (std::find(known.begin(), known.end(), m) == known.end())
      throw ConfigError("unknown method: " + m);
  if (cfg.groundedLabels.empty() && cfg.randomGrounded < 1)
    throw ConfigError("grounded set unspecified: give ids or a random count");

  LoadStats stats;
  Graph full;
  try {
    full = load_edge_list(cfg.graphPath, &stats);
  } catch (const ParseError& e) {
    throw DataError(e.what());
  }
  SubgraphResult lccRes = largest_connected_component(full);
  const Graph& lcc = lccRes.graph;
  const int n = lcc.nodeCount();

  std::vector<int> grounded;
  if (!cfg.groundedLabels.empty()) {
    for (std::int64_t label : cfg.groundedLabels) {
      int found = -1;
      for (int i = 0; i < n; ++i)
        if (lcc.rawLabel(i) == label) {
          found = i;
          break;
        }
      if (found < 0)
        throw DataError("grounded node " + std::to_string(label) +
                        " not present in the largest connected component");
      grounded.push_back(found);
    }
    std::sort(grounded.begin(), grounded.end());
    grounded.erase(std::unique(grounded.begin(), grounded.end()),
                   grounded.end());
    if (static_cast<int>(grounded.size()) >= n)
      throw ConfigError("grounded set must leave at least one free node");
  } else {
    grounded = sample_grounded(n, cfg.randomGrounded, cfg.seed);
  }

  GroundedSystem sys(std::make_shared<Graph>(lcc), grounded);

  SolverSettings settings;
  settings.epsilon = cfg.epsilon;
  settings.denseThreshold = cfg.denseThreshold;
  settings.seed = cfg.seed;

  ExperimentResult result;
  result.seed = cfg.seed;
  result.lccNodes = n;
  result.lccEdges = lcc.edgeCount();
  for (int g : grounded) result.groundedLabels.push_back(lcc.rawLabel(g));

  for (const auto& method : cfg.methods) {
    MethodOutcome outcome;
    outcome.method = method;
    auto t0 = Clock::now();
    try {
      outcome.result = dispatch(method, sys, cfg, settings);
      outcome.ok = true;
    } catch (const MethodError& e) {
      outcome.error = e.what();
      outcome.result = e.partial;
    } catch (const std::exception& e) {
      outcome.error = e.what();
    }
    outcome.totalMs =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    result.outcomes.push_back(std::move(outcome));
  }

  std::ostringstream csv;
  csv << "method,step,edge_u,edge_v,lambda,score,elapsed_ms,seed\n";
  for (const auto& o : result.outcomes) {
    int step = 1;
    for (const auto& s : o.result.steps) {
      csv << o.method << ',' << step++ << ',' << lcc.rawLabel(s.edge.first)
          << ',' << lcc.rawLabel(s.edge.second) << ',' << sig12(s.lambdaAfter)
          << ',' << sig12(s.score) << ',' << fixed3(s.elapsedMs) << ','
          << cfg.seed << '\n';
    }
  }
  result.csv = csv.str();

  if (!cfg.outputPath.empty()) {
    std::ofstream out(cfg.outputPath);
    if (!out) throw DataError("cannot write " + cfg.outputPath);
    out << result.csv;
  }
  return result;
}

bool FixtureReport::allPass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const FixtureCheck& c) { return c.pass; });
}

std::string FixtureReport::render() const {
  std::ostringstream out;
  int failed = 0;
  for (const auto& c : checks) {
    out << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  expected "
        << sig12(c.expected) << "  measured " << sig12(c.measured)
        << "  tol " << sig12(c.tolerance) << '\n';
    if (!c.pass) ++failed;
  }
  out << checks.size() - failed << '/' << checks.size() << " checks passed\n";
  return out.str();
}

namespace {

GroundedSystem load_fixture(const std::string& dataDir, const std::string& file,
                            std::vector<int> grounded) {
  std::string path = dataDir + "/" + file;
  Graph g;
  try {
    g = load_edge_list(path);
  } catch (const ParseError& e) {
    throw DataError(std::string("fixture ") + file + ": " + e.what());
  }
  return GroundedSystem(std::make_shared<Graph>(largest_connected_component(g).graph),
                        std::move(grounded));
}

void add_check(FixtureReport& rep, const std::string& name, double expected,
               double measured, double tol) {
  FixtureCheck c;
  c.name = name;
  c.expected = expected;
  c.measured = measured;
  c.tolerance = tol;
  c.pass = std::abs(measured - expected) <= tol;
  rep.checks.push_back(c);
}

}  // namespace

FixtureReport run_fixture_suite(const std::string& dataDir) {
  FixtureReport rep;
  SolverSettings settings;

  // 8-node path grounded at one end (the non-submodularity counterexample).
  GroundedSystem path8 = load_fixture(dataDir, "path8.edges", {0});
  double lamEmpty = smallest_eigenpair(path8, settings).lambda;
  double lamB = smallest_eigenpair(path8.withEdge(0, 2), settings).lambda;
  double lamAe = smallest_eigenpair(path8.withEdge(0, 6), settings).lambda;
  double lamBe =
      smallest_eigenpair(path8.withEdge(0, 2).withEdge(0, 6), settings).lambda;
  add_check(rep, "path8 lambda(empty)", 0.0437, lamEmpty, 1e-3);
  add_check(rep, "path8 lambda({(0,2)})", 0.0644, lamB, 1e-3);
  add_check(rep, "path8 lambda({(0,6)})", 0.1837, lamAe, 1e-3);
  add_check(rep, "path8 lambda({(0,2),(0,6)})", 0.2544, lamBe, 1e-3);
  add_check(rep, "path8 gain of (0,6) from empty", 0.14, lamAe - lamEmpty, 1e-2);
  add_check(rep, "path8 gain of (0,6) after (0,2)", 0.19, lamBe - lamB, 1e-2);
  add_check(rep, "path8 non-submodular (gain grows)", 1.0,
            (lamBe - lamB) > (lamAe - lamEmpty) ? 1.0 : 0.0, 0.0);

  // 5-node example, grounded node 0.
  GroundedSystem fig1 = load_fixture(dataDir, "fig1.edges", {0});
  double lamFig1 = smallest_eigenpair(fig1, settings).lambda;
  add_check(rep, "fig1 lambda(empty)", 0.1864, lamFig1, 1e-3);
  // Joining the symmetric non-grounded pair (2,3) leaves lambda unchanged.
  Eigen::MatrixXd m = fig1.denseMatrix();
  int i2 = fig1.freeIndex(2), i3 = fig1.freeIndex(3);
  m(i2, i2) += 1.0;
  m(i3, i3) += 1.0;
  m(i2, i3) -= 1.0;
  m(i3, i2) -= 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  add_check(rep, "fig1 lambda unchanged by edge (2,3)", lamFig1,
            es.eigenvalues()[0], 1e-9);
  RunResult ex2 = exhaustive_optimum(fig1, 2);
  add_check(rep, "fig1 exhaustive k=2 optimum", 1.120, ex2.finalLambda, 1e-3);
  EquivalenceReport eq = verify_problem_equivalence(fig1, 2);
  add_check(rep, "fig1 full vs pruned optimum agree", 1.0, eq.equal ? 1.0 : 0.0,
            0.0);

  // Real-world fixtures: shape checks plus a greedy-vs-exhaustive spot check.
  struct Shape {
    const char* file;
    int n;
    std::int64_t mEdges;
  };
  const Shape shapes[] = {{"karate.edges", 34, 78},
                          {"dolphins.edges", 62, 159},
                          {"tribes.edges", 16, 58},
                          {"firmhitech.edges", 33, 147}};
  for (const auto& sh : shapes) {
    Graph g = load_edge_list(dataDir + "/" + std::string(sh.file));
    add_check(rep, std::string(sh.file) + " node count", sh.n, g.nodeCount(), 0);
    add_check(rep, std::string(sh.file) + " edge count",
              static_cast<double>(sh.mEdges),
              static_cast<double>(g.edgeCount()), 0);
  }
  GroundedSystem karate = load_fixture(dataDir, "karate.edges", {0});
  RunResult kg = greedy_exact(karate, 1, settings);
  RunResult kx = exhaustive_optimum(karate, 1);
  add_check(rep, "karate greedy k=1 matches exhaustive", kx.finalLambda,
            kg.finalLambda, 1e-9);
  return rep;
}

std::string BoundsSummary::render() const {
  std::ostringstream out;
  out << "n = " << n << "\n"
      << "s = " << s << "\n"
      << "lambda2(follower) = " << sig12(bounds.lambda2) << "\n"
      << "bound term 2 s sqrt(n-s) / lambda2 = " << sig12(bounds.boundTerm)
      << "\n"
      << "gamma lower bound = " << sig12(bounds.gammaLower) << "\n"
      << "alpha upper bound = " << sig12(bounds.alphaUpper) << "\n"
      << "approx ratio lower bound = " << sig12(bounds.approxRatioLower)
      << "\n"
      << "informative: " << (bounds.informative ? "yes" : "no") << "\n";
  return out.str();
}

BoundsSummary bounds_report(const GroundedSystem& sys,
                            const SolverSettings& settings) {
  BoundsSummary summary;
  summary.n = sys.graph().nodeCount();
  summary.s = sys.groundedCount();
  summary.bounds = ratio_bounds(sys, settings);
  return summary;
}

}  // namespace glopt
