// SPDX-License-Identifier: Apache-2.0
// Shared test helpers: fixture locations, scratch directories, and
// brute-force oracles that do not share code with the library.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rca/agent/trace.hpp"
#include "rca/alerts/alert.hpp"
#include "rca/harness/config.hpp"
#include "rca/kgraph/graph.hpp"
#include "rca/kgraph/paths.hpp"
#include "rca/metrics/correctness.hpp"

namespace rca::test {

std::filesystem::path fixture_dir();
std::filesystem::path golden_dir();

/// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

/// Fixture config with output_dir pointing at `out` plus extra overrides.
harness::RunConfig fixture_config(const std::filesystem::path& out, std::vector<std::string> overrides = {});

/// Graph and alerts for one fixture scenario, extracted in memory.
struct ScenarioContext {
  harness::RunConfig config;
  kgraph::KnowledgeGraph graph;
  std::vector<alerts::Alert> alerts;
};
ScenarioContext fixture_scenario(const std::string& scenario_id);

/// Runs `workflow` on a fixture scenario with a script file.
agent::InferenceTrace run_fixture_workflow(const ScenarioContext& ctx, agent::Workflow workflow,
                                           const std::filesystem::path& script);

// ---- oracles ----

/// Fraction of records with a hit within the first k ranks, by counting.
double count_accuracy(const std::vector<metrics::CorrectnessRecord>& records, metrics::Measure m, int k);

using EdgeTuple = std::tuple<std::string, std::string, std::string>;  // source, relation, target

/// Every simple directed path from src to dst, by enumerating node
/// sequences and then the relation labels on each hop.
std::set<std::vector<EdgeTuple>> brute_force_paths(const std::vector<std::string>& nodes,
                                                   const std::vector<EdgeTuple>& edges, const std::string& src,
                                                   const std::string& dst, std::size_t max_len);

/// Edge-by-edge walk check against a plain edge list.
bool brute_force_walk(const std::vector<EdgeTuple>& edges, const std::vector<EdgeTuple>& walk,
                      const std::set<std::string>& alerted_nodes,
                      const std::set<std::pair<std::string, std::string>>& alerted_edges);

/// Two-sided p of the signed-rank statistic by enumerating all 2^n sign
/// assignments of the mid-ranked non-zero differences.
std::optional<double> enumerate_wilcoxon_p(const std::vector<double>& a, const std::vector<double>& b);

/// Kappa from the 2x2 agreement table.
std::optional<double> kappa_from_table(const std::vector<bool>& a, const std::vector<bool>& b);

}  // namespace rca::test
