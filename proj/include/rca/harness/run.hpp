// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rca/agent/endpoint.hpp"
#include "rca/agent/prompt.hpp"
#include "rca/alerts/alert.hpp"
#include "rca/harness/config.hpp"
#include "rca/kgraph/graph.hpp"

namespace rca::harness {

/// Endpoint for one work item. Scripted backends get a fresh replay of
/// `<script_dir>/<item_id>.json` (or the default script), so results do not
/// depend on scheduling.
std::unique_ptr<agent::ModelEndpoint> make_endpoint(const EndpointConfig& config, std::string_view item_id);

agent::RetryPolicy retry_policy(const EndpointConfig& config);
agent::GenerationSettings generation_settings(const EndpointConfig& config, std::uint64_t seed);

agent::PromptInputs prompt_inputs(const RunConfig& config, const kgraph::KnowledgeGraph& graph,
                                  const std::vector<alerts::Alert>& alerts);

struct RunSummary {
  std::size_t executed = 0;
  std::size_t resumed = 0;
  std::size_t not_run = 0;
  std::map<std::string, std::size_t> outcomes;
  /// Stopped early after repeated endpoint failures.
  bool aborted = false;
  std::vector<std::string> errors;
};

/// Runs the configured workflow for every curated scenario that lacks a
/// complete trace, writes traces/<id>.jsonl and manifest.json.
RunSummary cmd_run(const RunConfig& config);

/// Runs `task(i)` for i in [0, n) on `workers` threads. Exceptions are
/// collected per index; returns "<index>: <what>" messages.
std::vector<std::string> parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& task);

}  // namespace rca::harness
