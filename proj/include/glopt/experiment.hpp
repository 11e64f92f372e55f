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

#ifndef GLOPT_EXPERIMENT_HPP
#define GLOPT_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "glopt/baselines.hpp"
#include "glopt/optimize.hpp"

namespace glopt {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string graphPath;
  std::vector<std::int64_t> groundedLabels;  // raw input labels
  int randomGrounded = 0;                    // used when groundedLabels empty
  std::uint64_t seed = 1;
  int k = 1;
  std::vector<std::string> methods;
  double epsilon = 1e-3;
  int denseThreshold = 2048;
  std::uint64_t exhaustiveCap = 1'000'000;
  std::string outputPath;  // empty: CSV not written to disk
};

/// All method names accepted in ExperimentConfig::methods.
const std::vector<std::string>& registered_methods();

struct MethodOutcome {
  std::string method;
  bool ok = false;
  std::string error;     // empty when ok
  RunResult result;      // partial trace when a method failed mid-run
  double totalMs = 0.0;
};

struct ExperimentResult {
  std::vector<std::int64_t> groundedLabels;  // resolved, raw labels
  std::uint64_t seed = 0;
  int lccNodes = 0;
  std::int64_t lccEdges = 0;
  std::vector<MethodOutcome> outcomes;
  std::string csv;

  bool anyFailure() const;
};

/// Loads the graph, extracts the largest connected component, resolves the
/// grounded set (explicit labels or a seeded sample), runs every requested
/// method and renders the CSV. Writes the CSV to cfg.outputPath when set.
/// A method failure is recorded in its outcome; other methods still run.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Deterministic sample of `count` distinct values from [0, n) using a
/// mt19937_64 stream and an explicit Fisher-Yates prefix shuffle; result
/// sorted ascending.
std::vector<int> sample_grounded(int n, int count, std::uint64_t seed);

struct FixtureCheck {
  std::string name;
  double expected = 0.0;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct FixtureReport {
  std::vector<FixtureCheck> checks;
  bool allPass() const;
  std::string render() const;  // one line per check plus a summary line
};

/// Regression suite over the bundled fixture graphs in `dataDir`
/// (fig1.edges, path8.edges, karate.edges, dolphins.edges, tribes.edges,
/// firmhitech.edges). Throws DataError if a fixture file is missing.
FixtureReport run_fixture_suite(const std::string& dataDir);

struct BoundsSummary {
  int n = 0;
  int s = 0;
  RatioBounds bounds;
  std::string render() const;
};

BoundsSummary bounds_report(const GroundedSystem& sys,
                            const SolverSettings& settings = {});

}  // namespace glopt

#endif  // GLOPT_EXPERIMENT_HPP
