// SPDX-License-Identifier: Apache-2.0
#include "rca/harness/extract.hpp"

#include <algorithm>
#include <chrono>
#include <tuple>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "rca/alerts/alert_io.hpp"
#include "rca/alerts/drain.hpp"
#include "rca/alerts/log_alerts.hpp"
#include "rca/alerts/metric_alerts.hpp"
#include "rca/alerts/trace_alerts.hpp"
#include "rca/common/error.hpp"
#include "rca/harness/store.hpp"
#include "rca/kgraph/render.hpp"
#include "rca/telemetry/loader.hpp"

namespace rca::harness {

using nlohmann::json;

std::vector<alerts::Alert> extract_scenario_alerts(const telemetry::ScenarioBundle& bundle, const RunConfig& config,
                                                   const kgraph::KnowledgeGraph& graph,
                                                   std::vector<std::string>* notices) {
  std::vector<alerts::Alert> out;

  const auto parsed = alerts::drain_parse(bundle.window.logs, config.drain);
  alerts::LogAlertConfig log_config;
  log_config.rare_threshold = static_cast<std::size_t>(config.log_rare_threshold);
  auto logs = alerts::sample_log_alerts(bundle.window.logs, parsed, log_config);
  out.insert(out.end(), logs.begin(), logs.end());

  auto metrics = alerts::three_sigma_metric_alerts(bundle.window.metrics, bundle.baseline.metrics, notices);
  out.insert(out.end(), metrics.begin(), metrics.end());

  auto traces = alerts::iforest_trace_alerts(alerts::invocation_features(bundle.window.spans),
                                             alerts::invocation_features(bundle.baseline.spans), config.iforest,
                                             notices);
  out.insert(out.end(), traces.begin(), traces.end());

  alerts::map_alerts_to_graph(out, graph);
  if (config.withhold) out = alerts::withhold_modality(std::move(out), *config.withhold);
  std::stable_sort(out.begin(), out.end(), [](const alerts::Alert& a, const alerts::Alert& b) {
    return std::tie(a.timestamp, a.modality, a.element, a.kind, a.payload) <
           std::tie(b.timestamp, b.modality, b.element, b.kind, b.payload);
  });
  return out;
}

ExtractSummary cmd_extract(const RunConfig& config) {
  const Store store(config.output_dir);
  const auto mode = config.lenient ? telemetry::ParseMode::Lenient : telemetry::ParseMode::Strict;
  ExtractSummary summary;

  auto loaded = telemetry::load_telemetry(config.telemetry, mode);
  auto scenarios = telemetry::load_scenarios(config.scenarios, mode);
  for (const auto& issue : loaded.issues) {
    summary.notices.push_back(fmt::format("{}:{}: skipped row: {}", issue.source, issue.line, issue.message));
  }
  for (const auto& issue : scenarios.issues) {
    summary.notices.push_back(fmt::format("{}:{}: skipped scenario: {}", issue.source, issue.line, issue.message));
  }
  for (const auto& s : scenarios.scenarios) check_scenario_id(s.id);
  summary.loaded = scenarios.scenarios.size();

  auto kept = telemetry::filter_overlapping_scenarios(std::move(scenarios.scenarios),
                                                      std::chrono::seconds(config.min_gap_s));
  summary.after_overlap_filter = kept.size();
  kept = telemetry::filter_gap_scenarios(kept, loaded.telemetry, std::chrono::minutes(config.max_gap_min));
  summary.after_gap_filter = kept.size();
  if (kept.empty()) {
    throw Error(fmt::format(
        "curation left no scenarios: {} loaded, {} after the {} s overlap rule, 0 after the {} min telemetry gap rule",
        summary.loaded, summary.after_overlap_filter, config.min_gap_s, config.max_gap_min));
  }
  for (auto& s : kept) {
    if (s.dataset_tag.empty()) s.dataset_tag = config.dataset_name;
  }

  const auto graph = load_graph(config);
  std::filesystem::create_directories(store.alerts_dir());
  json per_scenario = json::array();
  for (const auto& scenario : kept) {
    const auto bundle = telemetry::slice_window(scenario, loaded.telemetry, std::chrono::minutes(config.baseline_min));
    std::vector<std::string> notices;
    const auto found = extract_scenario_alerts(bundle, config, graph, &notices);
    alerts::write_alerts(store.alerts_file(scenario.id), found);

    json counts = {{"LOG", 0}, {"METRIC", 0}, {"TRACE", 0}};
    std::size_t unmapped = 0;
    for (const auto& a : found) {
      counts[std::string(alerts::to_string(a.modality))] = counts[std::string(alerts::to_string(a.modality))].get<int>() + 1;
      unmapped += a.unmapped ? 1 : 0;
    }
    per_scenario.push_back({{"id", scenario.id},
                            {"alerts", found.size()},
                            {"per_modality", counts},
                            {"unmapped", unmapped},
                            {"baseline_free", bundle.baseline_free},
                            {"notices", notices}});
    for (const auto& n : notices) summary.notices.push_back(scenario.id + ": " + n);
  }
  write_scenarios(store, kept);
  write_json(store.extraction_report(),
             {{"loaded", summary.loaded},
              {"after_overlap_filter", summary.after_overlap_filter},
              {"after_gap_filter", summary.after_gap_filter},
              {"withheld", config.withhold ? std::string(alerts::to_string(*config.withhold)) : std::string("NONE")},
              {"scenarios", per_scenario},
              {"notices", summary.notices}});
  return summary;
}

std::vector<std::string> cmd_build_kg(const RunConfig& config) {
  const Store store(config.output_dir);
  std::vector<std::string> problems;
  const auto graph = load_graph(config);
  for (const auto rep : {kgraph::KgRepresentation::List, kgraph::KgRepresentation::JsonObject}) {
    const auto text = kgraph::render_kg(graph, rep);
    try {
      if (!(kgraph::parse_kg_rendering(text, rep, graph.schema()) == graph)) {
        problems.push_back(kgraph::to_string(rep) + " rendering does not parse back to the same graph");
      }
    } catch (const Error& e) {
      problems.push_back(kgraph::to_string(rep) + " rendering failed to parse: " + e.what());
    }
    const auto name = rep == kgraph::KgRepresentation::List ? "kg_list.txt" : "kg_json_object.txt";
    write_file_atomic(store.kg_dir() / name, text);
  }
  json types = json::array();
  for (const auto& t : graph.schema().fault_entity_types()) {
    types.push_back({{"type", t}, {"instances", graph.instances_of(t).size()}});
  }
  write_json(store.kg_dir() / "summary.json", {{"entities", graph.entities().size()},
                                               {"relationships", graph.relationships().size()},
                                               {"fault_entity_types", types},
                                               {"fault_types", effective_fault_types(config, graph)},
                                               {"problems", problems}});
  return problems;
}

}  // namespace rca::harness
