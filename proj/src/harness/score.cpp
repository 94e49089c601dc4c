// SPDX-License-Identifier: Apache-2.0
#include "rca/harness/score.hpp"

#include <sstream>

#include <fmt/format.h>

#include "rca/agent/final_answer.hpp"
#include "rca/agent/trace.hpp"
#include "rca/alerts/alert_io.hpp"
#include "rca/common/error.hpp"

namespace rca::harness {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<metrics::CorrectnessRecord> evaluate_store(const Store& store, const kgraph::KnowledgeGraph& graph) {
  const auto scenarios = read_scenarios(store);
  if (scenarios.empty()) throw Error("trace store is empty");
  std::vector<metrics::CorrectnessRecord> records;
  for (const auto& s : scenarios) {
    const auto path = store.trace_file(s.id);
    if (!fs::exists(path)) throw Error(fmt::format("scenario {} has no trace; run 'run' first", s.id));
    const auto stored = agent::read_trace_jsonl(path);
    if (!stored.complete) throw Error(fmt::format("trace for scenario {} is incomplete", s.id));
    std::vector<agent::Hypothesis> hyps;
    for (const auto& h : stored.end.value("hypotheses", json::array())) hyps.push_back(agent::hypothesis_from_json(h));
    const auto found = alerts::read_alerts(store.alerts_file(s.id));
    records.push_back(metrics::evaluate(s.id, stored.trace.outcome, hyps, s.gt_location, s.gt_fault_type, graph,
                                        alerts::alerted_elements(found)));
  }
  return records;
}

metrics::BaselineShape baseline_shape(const RunConfig& config, const kgraph::KnowledgeGraph& graph) {
  metrics::BaselineShape shape;
  for (const auto& t : graph.schema().fault_entity_types()) shape.n_locations += graph.instances_of(t).size();
  shape.n_types = effective_fault_types(config, graph).size();
  return shape;
}

void write_correctness(const fs::path& path, const std::vector<metrics::CorrectnessRecord>& records) {
  std::string out;
  for (const auto& r : records) out += metrics::to_json(r).dump() + "\n";
  write_file_atomic(path, out);
}

std::vector<metrics::CorrectnessRecord> read_correctness(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<metrics::CorrectnessRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(metrics::correctness_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(path.string(), n, e.what());
    }
  }
  return out;
}

std::string holdout_csv(const std::vector<metrics::MeasureDelta>& deltas) {
  std::string out = "measure,full_avg,holdout_avg,delta,w_plus,w_minus,n,p_value,exact,significant\n";
  for (const auto& d : deltas) {
    out += fmt::format("{},{:.6f},{:.6f},{:.6f},{:.1f},{:.1f},{},{},{},{}\n", metrics::to_string(d.measure),
                       d.full_avg, d.holdout_avg, d.delta, d.test.w_plus, d.test.w_minus, d.test.n,
                       d.test.defined ? fmt::format("{:.6f}", d.test.p_value) : std::string("NA"), d.test.exact,
                       d.significant);
  }
  return out;
}

metrics::ScoreSummary cmd_score(const RunConfig& config) {
  const Store store(config.output_dir);
  const auto graph = load_graph(config);
  const auto records = evaluate_store(store, graph);
  write_correctness(store.scores_dir() / "correctness.jsonl", records);
  const auto summary = metrics::summarize(records);
  const auto shape = baseline_shape(config, graph);
  write_file_atomic(store.scores_dir() / "scores.csv", metrics::score_table_csv(summary, shape));
  write_file_atomic(store.scores_dir() / "scores.md", metrics::score_table_markdown(summary, shape));
  if (config.compare_to) {
    const Store full(*config.compare_to);
    const auto full_path = full.scores_dir() / "correctness.jsonl";
    if (!fs::exists(full_path)) throw Error("compare_to run has not been scored: " + full_path.string());
    const auto deltas = metrics::holdout_delta(read_correctness(full_path), records);
    write_file_atomic(store.scores_dir() / "holdout.csv", holdout_csv(deltas));
  }
  return summary;
}

}  // namespace rca::harness
