// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rca/alerts/alert.hpp"
#include "rca/harness/config.hpp"
#include "rca/kgraph/graph.hpp"
#include "rca/telemetry/curation.hpp"

namespace rca::harness {

/// Log, metric and trace alerts for one scenario, mapped to the graph, with
/// the configured modality withheld, in chronological order.
std::vector<alerts::Alert> extract_scenario_alerts(const telemetry::ScenarioBundle& bundle, const RunConfig& config,
                                                   const kgraph::KnowledgeGraph& graph,
                                                   std::vector<std::string>* notices = nullptr);

struct ExtractSummary {
  std::size_t loaded = 0;
  std::size_t after_overlap_filter = 0;
  std::size_t after_gap_filter = 0;
  std::vector<std::string> notices;
};

/// Loads telemetry and scenarios, curates, and writes the alert store,
/// scenarios.json and extraction_report.json. Throws Error when curation
/// leaves no scenario.
ExtractSummary cmd_extract(const RunConfig& config);

/// Loads the KG, checks that both renderings parse back to the same graph,
/// and writes them under kg/. Returns the problems found; empty on success.
std::vector<std::string> cmd_build_kg(const RunConfig& config);

}  // namespace rca::harness
