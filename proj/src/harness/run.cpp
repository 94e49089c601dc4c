// SPDX-License-Identifier: Apache-2.0
#include "rca/harness/run.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <mutex>
#include <thread>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "rca/agent/final_answer.hpp"
#include "rca/agent/http_endpoint.hpp"
#include "rca/agent/trace.hpp"
#include "rca/agent/workflows.hpp"
#include "rca/alerts/alert_io.hpp"
#include "rca/alerts/unify.hpp"
#include "rca/common/error.hpp"
#include "rca/harness/store.hpp"
#include "rca/kgraph/render.hpp"
#include "rca/toolbox/tools.hpp"

#ifndef RCA_VERSION
#define RCA_VERSION "unknown"
#endif

namespace rca::harness {

namespace fs = std::filesystem;
using nlohmann::json;

std::unique_ptr<agent::ModelEndpoint> make_endpoint(const EndpointConfig& config, std::string_view item_id) {
  if (config.backend == "http") {
    agent::HttpEndpointConfig http;
    http.base_url = config.base_url;
    http.path = config.path;
    http.model = config.model;
    http.timeout = std::chrono::seconds(config.timeout_s);
    if (!config.api_key_env.empty()) {
      if (const char* key = std::getenv(config.api_key_env.c_str())) http.api_key = key;
    }
    return std::make_unique<agent::HttpEndpoint>(http);
  }
  fs::path script;
  if (!config.script_dir.empty()) {
    const auto candidate = config.script_dir / (std::string(item_id) + ".json");
    if (fs::exists(candidate)) script = candidate;
  }
  if (script.empty()) script = config.default_script;
  if (script.empty()) throw Error(fmt::format("no script for '{}' and no default_script configured", item_id));
  return std::make_unique<agent::ScriptedEndpoint>(agent::ScriptedEndpoint::load_script(script));
}

agent::RetryPolicy retry_policy(const EndpointConfig& config) {
  agent::RetryPolicy p;
  p.max_retries = config.max_retries;
  p.backoff = config.backend == "http" ? std::chrono::milliseconds(500) : std::chrono::milliseconds(0);
  return p;
}

agent::GenerationSettings generation_settings(const EndpointConfig& config, std::uint64_t seed) {
  agent::GenerationSettings s;
  s.temperature = config.temperature;
  s.max_tokens = config.max_tokens;
  s.seed = static_cast<std::int64_t>(seed);
  return s;
}

agent::PromptInputs prompt_inputs(const RunConfig& config, const kgraph::KnowledgeGraph& graph,
                                  const std::vector<alerts::Alert>& found) {
  agent::PromptInputs in;
  in.entity_schema = kgraph::render_entity_types(graph.schema());
  in.relationship_schema = kgraph::render_relationship_types(graph.schema());
  in.alerts_text = alerts::unify_alerts(found, config.unification).text;
  in.fault_types = effective_fault_types(config, graph);
  in.fault_entity_types = graph.schema().fault_entity_types();
  if (config.workflow == agent::Workflow::StraightShot) in.kg_text = kgraph::render_kg(graph, config.kg_representation);
  return in;
}

std::vector<std::string> parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& task) {
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::vector<std::pair<std::size_t, std::string>> failures;
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        task(i);
      } catch (const std::exception& e) {
        std::lock_guard lock(mutex);
        failures.emplace_back(i, e.what());
      }
    }
  };
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  std::sort(failures.begin(), failures.end());
  std::vector<std::string> errors;
  for (const auto& [i, what] : failures) errors.push_back(fmt::format("{}: {}", i, what));
  return errors;
}

namespace {

struct ScenarioResult {
  bool ran = false;
  bool resumed = false;
  json entry;
  double elapsed_ms = 0.0;
};

json entry_for(const telemetry::FaultScenario& s, const agent::InferenceTrace& trace) {
  return {{"id", s.id},
          {"outcome", std::string(agent::to_string(trace.outcome))},
          {"trace", "traces/" + s.id + ".jsonl"},
          {"iterations", trace.iterations},
          {"endpoint_calls", trace.endpoint_calls},
          {"tool_calls", trace.tool_calls},
          {"retries", trace.retries}};
}

}  // namespace

RunSummary cmd_run(const RunConfig& config) {
  const Store store(config.output_dir);
  const auto scenarios = read_scenarios(store);
  const auto graph = load_graph(config);
  const auto fault_types = effective_fault_types(config, graph);
  const auto hash = config_hash(config);

  std::vector<ScenarioResult> results(scenarios.size());
  std::atomic<int> consecutive_failures{0};
  std::atomic<bool> abort{false};

  const auto task = [&](std::size_t i) {
    const auto& scenario = scenarios[i];
    auto& result = results[i];
    const auto path = store.trace_file(scenario.id);
    if (fs::exists(path)) {
      auto stored = agent::read_trace_jsonl(path);
      if (stored.complete) {
        result.resumed = true;
        result.entry = entry_for(scenario, stored.trace);
        return;
      }
    }
    if (abort) return;

    const auto started = std::chrono::steady_clock::now();
    const auto found = alerts::read_alerts(store.alerts_file(scenario.id));
    const auto inputs = prompt_inputs(config, graph, found);
    const auto prompt = agent::build_prompt(config.workflow, inputs);
    auto endpoint = make_endpoint(config.agent, scenario.id);
    toolbox::Toolbox tools(graph, found);
    agent::WorkflowOptions options;
    options.max_iterations = config.max_iterations;
    options.retry = retry_policy(config.agent);
    options.settings = generation_settings(config.agent, config.seed);

    agent::InferenceTrace trace;
    switch (config.workflow) {
      case agent::Workflow::StraightShot:
        trace = agent::run_straight_shot(*endpoint, prompt, options);
        break;
      case agent::Workflow::React:
        trace = agent::run_react(*endpoint, prompt, tools, options);
        break;
      case agent::Workflow::PlanExecute:
        trace = agent::run_plan_and_execute(*endpoint, inputs, tools, options);
        break;
    }

    json end = json::object();
    json hyps = json::array();
    json diagnostics = json::array();
    if (trace.outcome == agent::Outcome::Completed) {
      const auto parsed = agent::parse_final_answer(trace.final_text(), &graph, fault_types);
      for (const auto& h : parsed.hypotheses) hyps.push_back(agent::to_json(h));
      diagnostics = parsed.diagnostics;
      if (parsed.parse_failure) {
        trace.outcome = agent::Outcome::ParseFailure;
        trace.error = "final answer could not be parsed";
      }
    }
    end["final_text"] = trace.final_text();
    end["hypotheses"] = hyps;
    end["diagnostics"] = diagnostics;

    json prompt_json = json::array();
    for (const auto& m : prompt) prompt_json.push_back(agent::to_json(m));
    const json header = {{"scenario_id", scenario.id},
                         {"dataset", scenario.dataset_tag},
                         {"workflow", agent::to_string(config.workflow)},
                         {"model", config.agent.model},
                         {"config_hash", hash},
                         {"prompt", prompt_json}};
    write_file_atomic(path, agent::trace_to_jsonl(header, trace, end));

    if (trace.outcome == agent::Outcome::EndpointError) {
      if (++consecutive_failures >= config.max_endpoint_failures) abort = true;
    } else {
      consecutive_failures = 0;
    }
    result.ran = true;
    result.entry = entry_for(scenario, trace);
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  };

  const auto wall_start = std::chrono::steady_clock::now();
  RunSummary summary;
  summary.errors = parallel_for(scenarios.size(), worker_count(config.parallelism, config.agent.concurrency), task);
  summary.aborted = abort;

  json entries = json::array();
  json per_scenario_ms = json::object();
  json resumed = json::array();
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    auto& r = results[i];
    if (r.entry.is_null()) {
      r.entry = {{"id", scenarios[i].id}, {"outcome", "NOT_RUN"}, {"trace", nullptr}};
      ++summary.not_run;
    }
    if (r.ran) {
      ++summary.executed;
      per_scenario_ms[scenarios[i].id] = r.elapsed_ms;
    }
    if (r.resumed) {
      ++summary.resumed;
      resumed.push_back(scenarios[i].id);
    }
    ++summary.outcomes[r.entry.at("outcome").get<std::string>()];
    entries.push_back(r.entry);
  }
  const bool complete = summary.not_run == 0 && summary.errors.empty();
  const json manifest = {
      {"version", RCA_VERSION},
      {"config_hash", hash},
      {"workflow", agent::to_string(config.workflow)},
      {"model", config.agent.model},
      {"scenarios", entries},
      {"outcome_counts", summary.outcomes},
      {"complete", complete},
      {"aborted", summary.aborted},
      {"errors", summary.errors},
      // Everything below varies between otherwise identical runs.
      {"session",
       {{"executed", summary.executed},
        {"resumed", resumed},
        {"elapsed_ms",
         std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - wall_start).count()},
        {"per_scenario_ms", per_scenario_ms}}}};
  write_json(store.manifest(), manifest);
  return summary;
}

}  // namespace rca::harness
