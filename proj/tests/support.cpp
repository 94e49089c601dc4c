// SPDX-License-Identifier: Apache-2.0
#include "support.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "rca/agent/endpoint.hpp"
#include "rca/agent/workflows.hpp"
#include "rca/harness/extract.hpp"
#include "rca/harness/run.hpp"
#include "rca/telemetry/curation.hpp"
#include "rca/telemetry/loader.hpp"
#include "rca/toolbox/tools.hpp"

namespace rca::test {

namespace fs = std::filesystem;

fs::path fixture_dir() { return RCA_FIXTURE_DIR; }
fs::path golden_dir() { return RCA_GOLDEN_DIR; }

fs::path scratch_dir(const std::string& name) {
  // The pid keeps concurrently running test processes apart.
  const auto dir = fs::temp_directory_path() / ("rca_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

harness::RunConfig fixture_config(const fs::path& out, std::vector<std::string> overrides) {
  overrides.insert(overrides.begin(), "output_dir=" + nlohmann::json(out.string()).dump());
  return harness::load_config(fixture_dir() / "config.json", overrides);
}

ScenarioContext fixture_scenario(const std::string& scenario_id) {
  auto config = fixture_config(fs::temp_directory_path() / "rca_test_unused");
  auto loaded = telemetry::load_telemetry(config.telemetry, telemetry::ParseMode::Strict);
  const auto scenarios = telemetry::load_scenarios(config.scenarios, telemetry::ParseMode::Strict).scenarios;
  const auto it = std::find_if(scenarios.begin(), scenarios.end(), [&](const auto& s) { return s.id == scenario_id; });
  if (it == scenarios.end()) throw std::runtime_error("no fixture scenario " + scenario_id);
  auto graph = harness::load_graph(config);
  const auto bundle = telemetry::slice_window(*it, loaded.telemetry, std::chrono::minutes(config.baseline_min));
  auto found = harness::extract_scenario_alerts(bundle, config, graph);
  return {std::move(config), std::move(graph), std::move(found)};
}

agent::InferenceTrace run_fixture_workflow(const ScenarioContext& ctx, agent::Workflow workflow, const fs::path& script) {
  auto config = ctx.config;
  config.workflow = workflow;
  agent::ScriptedEndpoint endpoint(agent::ScriptedEndpoint::load_script(script));
  toolbox::Toolbox tools(ctx.graph, ctx.alerts);
  const auto inputs = harness::prompt_inputs(config, ctx.graph, ctx.alerts);
  switch (workflow) {
    case agent::Workflow::StraightShot:
      return agent::run_straight_shot(endpoint, agent::build_prompt(workflow, inputs));
    case agent::Workflow::React:
      return agent::run_react(endpoint, agent::build_prompt(workflow, inputs), tools);
    case agent::Workflow::PlanExecute:
      return agent::run_plan_and_execute(endpoint, inputs, tools);
  }
  return {};
}

double count_accuracy(const std::vector<metrics::CorrectnessRecord>& records, metrics::Measure m, int k) {
  std::size_t hits = 0;
  for (const auto& r : records) {
    const auto& row = m == metrics::Measure::LA   ? r.location
                      : m == metrics::Measure::TA ? r.type
                      : m == metrics::Measure::PA ? r.path
                                                  : r.hypothesis;
    bool hit = false;
    for (int i = 0; i < k; ++i) hit = hit || row[i];
    hits += hit ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

std::set<std::vector<EdgeTuple>> brute_force_paths(const std::vector<std::string>& nodes,
                                                   const std::vector<EdgeTuple>& edges, const std::string& src,
                                                   const std::string& dst, std::size_t max_len) {
  std::set<std::vector<EdgeTuple>> out;
  if (src == dst) return out;
  // All node sequences src, v1, ..., dst with distinct nodes.
  std::vector<std::vector<std::string>> sequences;
  std::vector<std::string> others;
  for (const auto& n : nodes) {
    if (n != src && n != dst) others.push_back(n);
  }
  const std::size_t m = others.size();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<std::string> middle;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (1u << i)) middle.push_back(others[i]);
    }
    std::sort(middle.begin(), middle.end());
    do {
      std::vector<std::string> seq{src};
      seq.insert(seq.end(), middle.begin(), middle.end());
      seq.push_back(dst);
      if (seq.size() - 1 <= max_len) sequences.push_back(seq);
    } while (std::next_permutation(middle.begin(), middle.end()));
  }
  for (const auto& seq : sequences) {
    std::vector<std::vector<EdgeTuple>> partial{{}};
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      std::vector<std::vector<EdgeTuple>> next;
      for (const auto& e : edges) {
        if (std::get<0>(e) != seq[i] || std::get<2>(e) != seq[i + 1]) continue;
        for (auto p : partial) {
          p.push_back(e);
          next.push_back(std::move(p));
        }
      }
      partial = std::move(next);
    }
    for (auto& p : partial) out.insert(std::move(p));
  }
  return out;
}

bool brute_force_walk(const std::vector<EdgeTuple>& edges, const std::vector<EdgeTuple>& walk,
                      const std::set<std::string>& alerted_nodes,
                      const std::set<std::pair<std::string, std::string>>& alerted_edges) {
  if (walk.empty()) return false;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    if (std::find(edges.begin(), edges.end(), walk[i]) == edges.end()) return false;
    if (i > 0 && std::get<2>(walk[i - 1]) != std::get<0>(walk[i])) return false;
  }
  const auto& [s, r, t] = walk.back();
  return alerted_nodes.contains(t) || alerted_edges.contains({s, t});
}

std::optional<double> enumerate_wilcoxon_p(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] - b[i] != 0.0) d.push_back(a[i] - b[i]);
  }
  if (d.empty()) return std::nullopt;
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return std::abs(d[x]) < std::abs(d[y]); });
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(std::abs(d[order[j + 1]]) - std::abs(d[order[i]])) < 1e-9) ++j;
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) rank[order[k]] = mid;
    i = j + 1;
  }
  double total = 0, observed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total += rank[i];
    if (d[i] > 0) observed += rank[i];
  }
  const double dev = std::abs(observed - total / 2.0);
  std::size_t extreme = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double w = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) w += rank[i];
    }
    if (std::abs(w - total / 2.0) >= dev - 1e-9) ++extreme;
  }
  return static_cast<double>(extreme) / static_cast<double>(1u << n);
}

std::optional<double> kappa_from_table(const std::vector<bool>& a, const std::vector<bool>& b) {
  double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) ++n11;
    else if (a[i]) ++n10;
    else if (b[i]) ++n01;
    else ++n00;
  }
  const double n = n11 + n10 + n01 + n00;
  const double po = (n11 + n00) / n;
  const double pe = ((n11 + n10) * (n11 + n01) + (n00 + n01) * (n00 + n10)) / (n * n);
  if (pe == 1.0) return std::nullopt;
  return (po - pe) / (1.0 - pe);
}

}  // namespace rca::test
