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

#include <cstdio>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "glopt/experiment.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kDataError = 2;
constexpr int kMethodFailure = 3;

std::vector<std::int64_t> parse_id_list(const std::string& spec) {
  std::vector<std::int64_t> ids;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    std::int64_t v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw glopt::ConfigError("bad node id: " + tok);
    ids.push_back(v);
  }
  if (ids.empty()) throw glopt::ConfigError("empty grounded id list");
  return ids;
}

int cmd_run(const glopt::ExperimentConfig& cfg) {
  glopt::ExperimentResult res = glopt::run_experiment(cfg);

  std::cout << "graph: " << cfg.graphPath << " (lcc " << res.lccNodes
            << " nodes, " << res.lccEdges << " edges)\n";
  std::cout << "grounded:";
  for (auto g : res.groundedLabels) std::cout << ' ' << g;
  std::cout << "  (seed " << res.seed << ")\n";
  for (const auto& o : res.outcomes) {
    if (o.ok) {
      char lam[40];
      std::snprintf(lam, sizeof lam, "%.12g", o.result.finalLambda);
      std::printf("%-12s final lambda %-16s %.1f ms\n", o.method.c_str(), lam,
                  o.totalMs);
    } else {
      std::printf("%-12s FAILED: %s\n", o.method.c_str(), o.error.c_str());
    }
  }
  if (cfg.outputPath.empty())
    std::cout << res.csv;
  else
    std::cout << "wrote " << cfg.outputPath << "\n";
  return res.anyFailure() ? kMethodFailure : kOk;
}

int cmd_fixtures(const std::string& dataDir) {
  glopt::FixtureReport rep = glopt::run_fixture_suite(dataDir);
  std::cout << rep.render();
  return rep.allPass() ? kOk : kMethodFailure;
}

int cmd_bounds(const std::string& graphPath, const std::string& groundedSpec,
               int randomGrounded, std::uint64_t seed, double epsilon,
               int denseThreshold) {
  glopt::Graph full = glopt::load_edge_list(graphPath);
  glopt::Graph lcc = glopt::largest_connected_component(full).graph;
  std::vector<int> grounded;
  if (!groundedSpec.empty()) {
    for (std::int64_t label : parse_id_list(groundedSpec)) {
      int found = -1;
      for (int i = 0; i < lcc.nodeCount(); ++i)
        if (lcc.rawLabel(i) == label) {
          found = i;
          break;
        }
      if (found < 0)
        throw glopt::DataError("grounded node " + std::to_string(label) +
                               " not in largest connected component");
      grounded.push_back(found);
    }
  } else if (randomGrounded >= 1) {
    grounded = glopt::sample_grounded(lcc.nodeCount(), randomGrounded, seed);
  } else {
    throw glopt::ConfigError("grounded set unspecified");
  }
  glopt::GroundedSystem sys(std::make_shared<glopt::Graph>(std::move(lcc)),
                            grounded);
  glopt::SolverSettings settings;
  settings.epsilon = epsilon;
  settings.denseThreshold = denseThreshold;
  settings.seed = seed;
  std::cout << glopt::bounds_report(sys, settings).render();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grounded Laplacian eigenvalue maximization"};
  app.require_subcommand(1);

  glopt::ExperimentConfig cfg;
  std::string groundedSpec;
  std::string methodsSpec = "greedy,fast";

  CLI::App* run = app.add_subcommand("run", "run methods and emit a CSV trace");
  run->add_option("--graph", cfg.graphPath, "edge-list file")->required();
  run->add_option("--grounded", groundedSpec,
                  "comma-separated grounded node labels");
  run->add_option("--random-grounded", cfg.randomGrounded,
                  "number of grounded nodes sampled with --seed");
  run->add_option("--seed", cfg.seed, "PRNG seed (default 1)");
  run->add_option("--k", cfg.k, "edges to add")->required();
  run->add_option("--methods", methodsSpec,
                  "comma-separated method names (default greedy,fast)");
  run->add_option("--epsilon", cfg.epsilon, "eigenvalue tolerance (default 1e-3)");
  run->add_option("--dense-threshold", cfg.denseThreshold,
                  "dense eigensolver cutoff (default 2048)");
  run->add_option("--exhaustive-cap", cfg.exhaustiveCap,
                  "subset budget for exhaustive search (default 1000000)");
  run->add_option("--out", cfg.outputPath, "CSV output path (default stdout)");

  std::string dataDir = "data";
  CLI::App* fixtures =
      app.add_subcommand("fixtures", "run the bundled regression fixtures");
  fixtures->add_option("--data", dataDir, "fixture directory (default data)");

  std::string bGraph, bGrounded;
  int bRandom = 0;
  std::uint64_t bSeed = 1;
  double bEpsilon = 1e-3;
  int bDense = 2048;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "report the submodularity-ratio and curvature bounds");
  bounds->add_option("--graph", bGraph, "edge-list file")->required();
  bounds->add_option("--grounded", bGrounded, "comma-separated grounded labels");
  bounds->add_option("--random-grounded", bRandom, "sampled grounded count");
  bounds->add_option("--seed", bSeed, "PRNG seed");
  bounds->add_option("--epsilon", bEpsilon, "eigenvalue tolerance");
  bounds->add_option("--dense-threshold", bDense, "dense cutoff");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (run->parsed()) {
      if (!groundedSpec.empty()) cfg.groundedLabels = parse_id_list(groundedSpec);
      std::stringstream ss(methodsSpec);
      std::string tok;
      while (std::getline(ss, tok, ','))
        if (!tok.empty()) cfg.methods.push_back(tok);
      return cmd_run(cfg);
    }
    if (fixtures->parsed()) return cmd_fixtures(dataDir);
    if (bounds->parsed())
      return cmd_bounds(bGraph, bGrounded, bRandom, bSeed, bEpsilon, bDense);
  } catch (const glopt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const glopt::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const glopt::ParseError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMethodFailure;
  }
  return kConfigError;
}
