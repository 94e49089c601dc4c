// SPDX-License-Identifier: Apache-2.0
#include "rca/harness/judge_cmd.hpp"

#include <map>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "rca/agent/endpoint.hpp"
#include "rca/agent/trace.hpp"
#include "rca/common/error.hpp"
#include "rca/harness/run.hpp"
#include "rca/harness/score.hpp"
#include "rca/harness/store.hpp"
#include "rca/judge/judge_prompt.hpp"
#include "rca/judge/sampling.hpp"
#include "rca/judge/statistics.hpp"
#include "rca/judge/taxonomy.hpp"

namespace rca::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct JudgeOutcome {
  std::optional<judge::JudgeAnnotation> annotation;
  int attempts = 0;
  int endpoint_retries = 0;
  std::vector<std::string> parse_errors;
  std::string failure;
};

JudgeOutcome judge_trace(const RunConfig& config, const std::string& trace_id, const agent::StoredTrace& stored,
                         const telemetry::FaultScenario& scenario) {
  judge::JudgeInputs in;
  for (const auto& m : stored.header.value("prompt", json::array())) in.task_prompt.push_back(agent::chat_message_from_json(m));
  in.trace = stored.trace;
  const auto hyps = stored.end.value("hypotheses", json::array());
  in.structured_response = hyps.empty() ? std::string() : hyps.dump(2);
  in.gt_location = scenario.gt_location;
  in.gt_fault_type = scenario.gt_fault_type;

  agent::ChatRequest request;
  request.messages = judge::build_judge_prompt(in);
  request.settings = generation_settings(config.judge, config.seed);
  auto endpoint = make_endpoint(config.judge, trace_id);
  const auto policy = retry_policy(config.judge);

  JudgeOutcome out;
  while (out.attempts < config.judge_max_attempts) {
    ++out.attempts;
    agent::AssistantMessage reply;
    try {
      reply = agent::complete_with_retry(*endpoint, request, policy, out.endpoint_retries);
    } catch (const agent::EndpointError& e) {
      out.failure = std::string("endpoint error: ") + e.what();
      return out;
    }
    try {
      auto annotation = judge::parse_judge_output(reply.content);
      annotation.trace_id = trace_id;
      out.annotation = std::move(annotation);
      return out;
    } catch (const judge::JudgeParseError& e) {
      out.parse_errors.push_back(e.what());
    }
  }
  out.failure = fmt::format("judge output unparseable after {} attempts", out.attempts);
  return out;
}

}  // namespace

std::vector<judge::JudgeAnnotation> read_annotations(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<judge::JudgeAnnotation> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(judge::annotation_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw ParseError(path.string(), n, e.what());
    }
  }
  return out;
}

JudgeSummary cmd_judge(const RunConfig& config) {
  const Store store(config.output_dir);
  const auto scenarios = read_scenarios(store);
  std::map<std::string, telemetry::FaultScenario> by_id;
  std::map<std::string, agent::StoredTrace> traces;
  std::vector<judge::TraceTag> tags;
  for (const auto& s : scenarios) {
    by_id[s.id] = s;
    const auto path = store.trace_file(s.id);
    if (!fs::exists(path)) {
      spdlog::warn("scenario {} has no trace and is not judged", s.id);
      continue;
    }
    auto stored = agent::read_trace_jsonl(path);
    if (!stored.complete) {
      spdlog::warn("trace {} is incomplete and is not judged", s.id);
      continue;
    }
    tags.push_back({s.id, stored.header.value("dataset", s.dataset_tag), stored.header.value("model", ""),
                    stored.header.value("workflow", "")});
    traces.emplace(s.id, std::move(stored));
  }
  if (tags.empty()) throw Error("no complete traces to judge");

  const auto sample = judge::stratified_sample(tags, config.judge_quota, config.seed);
  std::vector<JudgeOutcome> outcomes(sample.size());
  JudgeSummary summary;
  summary.sampled = sample.size();
  summary.errors = parallel_for(sample.size(), worker_count(config.parallelism, config.judge.concurrency),
                                [&](std::size_t i) {
                                  const auto& id = sample[i];
                                  outcomes[i] = judge_trace(config, id, traces.at(id), by_id.at(id));
                                });

  std::string annotations_text;
  json log = json::array();
  json failures = json::array();
  std::vector<judge::JudgeAnnotation> annotations;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto& o = outcomes[i];
    summary.parse_retries += o.parse_errors.size();
    log.push_back({{"trace_id", sample[i]},
                   {"attempts", o.attempts},
                   {"endpoint_retries", o.endpoint_retries},
                   {"parse_errors", o.parse_errors},
                   {"status", o.annotation ? "ANNOTATED" : "JUDGE_FAILED"}});
    if (o.annotation) {
      annotations_text += judge::to_json(*o.annotation).dump() + "\n";
      annotations.push_back(*o.annotation);
    } else {
      summary.failed.push_back(sample[i]);
      failures.push_back({{"trace_id", sample[i]}, {"reason", o.failure}});
      spdlog::warn("trace {} excluded: {}", sample[i], o.failure);
    }
  }
  summary.annotated = annotations.size();
  write_file_atomic(store.judge_dir() / "annotations.jsonl", annotations_text);
  write_json(store.judge_dir() / "log.json", log);
  write_json(store.judge_dir() / "failures.json", failures);

  std::vector<judge::AnnotatedTrace> annotated;
  std::vector<judge::JudgedSample> joined;
  const auto graph = load_graph(config);
  const auto records = evaluate_store(store, graph);
  std::map<std::string, const metrics::CorrectnessRecord*> record_by_id;
  for (const auto& r : records) record_by_id[r.scenario_id] = &r;
  for (const auto& a : annotations) {
    const auto& tag = *std::find_if(tags.begin(), tags.end(), [&](const auto& t) { return t.trace_id == a.trace_id; });
    annotated.push_back({a, tag.dataset, tag.model, tag.workflow});
    joined.push_back({a, *record_by_id.at(a.trace_id)});
  }
  write_file_atomic(store.judge_dir() / "prevalence.csv", judge::prevalence_csv(judge::prevalence(annotated)));
  std::vector<judge::RiskStats> risk;
  for (const auto& rf : judge::analysis_failure_ids()) {
    for (const auto m : metrics::kAllMeasures) risk.push_back(judge::risk_stats(joined, rf, m));
  }
  write_file_atomic(store.judge_dir() / "risk.csv", judge::risk_csv(risk));
  return summary;
}

}  // namespace rca::harness
