// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdlib>
#include <fstream>

#include <gtest/gtest.h>

#include "rca/alerts/alert_io.hpp"
#include "rca/common/error.hpp"
#include "rca/harness/config.hpp"
#include "rca/harness/extract.hpp"
#include "rca/harness/judge_cmd.hpp"
#include "rca/harness/report.hpp"
#include "rca/harness/run.hpp"
#include "rca/harness/score.hpp"
#include "rca/harness/store.hpp"
#include "support.hpp"

namespace rca::harness {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string str(const fs::path& p) { return json(p.string()).dump(); }

TEST(Config, OverridesParseJsonOrString) {
  json doc = {{"a", {{"b", 1}}}};
  apply_override(doc, "a.b=2");
  apply_override(doc, "a.c.d=true");
  apply_override(doc, "name=plain text");
  apply_override(doc, "list=[1,2]");
  EXPECT_EQ(doc["a"]["b"], 2);
  EXPECT_EQ(doc["a"]["c"]["d"], true);
  EXPECT_EQ(doc["name"], "plain text");
  EXPECT_EQ(doc["list"], json::array({1, 2}));
  EXPECT_THROW(apply_override(doc, "novalue"), ValidationError);
}

TEST(Config, FixtureLoadsWithOverrides) {
  const auto c = test::fixture_config("/tmp/x", {"workflow=PLAN_EXECUTE", "judge.quota=7", "withhold=METRIC"});
  EXPECT_EQ(c.workflow, agent::Workflow::PlanExecute);
  EXPECT_EQ(c.judge_quota, 7u);
  EXPECT_EQ(c.withhold, alerts::Modality::Metric);
  EXPECT_EQ(c.iforest.score_threshold, 0.6);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.agent.script_dir, test::fixture_dir() / "scripts" / "react");
}

TEST(Config, RejectsInvalidValues) {
  EXPECT_THROW(test::fixture_config("/tmp/x", {"k=4"}), ValidationError);
  EXPECT_THROW(test::fixture_config("/tmp/x", {"workflow=TREE"}), ValidationError);
  EXPECT_THROW(test::fixture_config("/tmp/x", {"version=2"}), ValidationError);
  EXPECT_THROW(test::fixture_config("/tmp/x", {"agent.backend=grpc"}), ValidationError);
  EXPECT_THROW(test::fixture_config("/tmp/x", {"agent.backend=http"}), ValidationError);
  EXPECT_THROW(test::fixture_config("/tmp/x", {"judge.max_attempts=0"}), ValidationError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), Error);
}

TEST(Config, HashIgnoresOutputDir) {
  const auto a = test::fixture_config("/tmp/a");
  const auto b = test::fixture_config("/tmp/b");
  const auto c = test::fixture_config("/tmp/a", {"seed=7"});
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_NE(config_hash(a), config_hash(c));
  EXPECT_EQ(config_hash(a).size(), 64u);
}

TEST(Config, WorkerCount) {
  EXPECT_EQ(worker_count(4, 0), 4u);
  EXPECT_EQ(worker_count(4, 2), 2u);
  EXPECT_EQ(worker_count(-3, 0), 1u);
  EXPECT_GE(worker_count(0, 0), 1u);
}

TEST(Config, FaultTypesFromSchema) {
  const auto c = test::fixture_config("/tmp/x");
  const auto g = load_graph(c);
  EXPECT_EQ(effective_fault_types(c, g), g.schema().all_fault_types());
  const auto only = test::fixture_config("/tmp/x", {R"(fault_types=["session timeout"])"});
  EXPECT_EQ(effective_fault_types(only, g), std::vector<std::string>{"session timeout"});
}

TEST(Store, AtomicWritesAndIds) {
  const auto dir = test::scratch_dir("store");
  write_file_atomic(dir / "a" / "b.txt", "hello");
  EXPECT_EQ(read_file(dir / "a" / "b.txt"), "hello");
  write_file_atomic(dir / "a" / "b.txt", "again");
  EXPECT_EQ(read_file(dir / "a" / "b.txt"), "again");
  EXPECT_EQ(std::distance(fs::directory_iterator(dir / "a"), fs::directory_iterator()), 1);
  EXPECT_NO_THROW(check_scenario_id("s-01_a.b"));
  EXPECT_THROW(check_scenario_id("../evil"), ValidationError);
  EXPECT_THROW(check_scenario_id(""), ValidationError);
  EXPECT_THROW(read_scenarios(Store(dir)), Error);
}

TEST(Parallel, RunsEveryIndexAndCollectsErrors) {
  std::vector<std::atomic<int>> hits(50);
  const auto errors = parallel_for(50, 4, [&](std::size_t i) {
    ++hits[i];
    if (i % 10 == 3) throw std::runtime_error("bad " + std::to_string(i));
  });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  ASSERT_EQ(errors.size(), 5u);
  EXPECT_EQ(errors[0], "3: bad 3");
}

class Pipeline : public ::testing::Test {
 protected:
  void SetUp() override { out_ = test::scratch_dir(::testing::UnitTest::GetInstance()->current_test_info()->name()); }
  RunConfig config(std::vector<std::string> overrides = {}) { return test::fixture_config(out_, std::move(overrides)); }
  fs::path out_;
};

TEST_F(Pipeline, ExtractCuratesAndWritesAlerts) {
  const auto s = cmd_extract(config());
  EXPECT_EQ(s.loaded, 8u);
  EXPECT_EQ(s.after_overlap_filter, 7u);
  EXPECT_EQ(s.after_gap_filter, 6u);
  const Store store(out_);
  std::vector<std::string> ids;
  for (const auto& sc : read_scenarios(store)) ids.push_back(sc.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"s01", "s02", "s03", "s05", "s06", "s08"}));
  const auto alerts = alerts::read_alerts(store.alerts_file("s01"));
  EXPECT_FALSE(alerts.empty());
  std::set<alerts::Modality> modalities;
  for (const auto& a : alerts) modalities.insert(a.modality);
  EXPECT_EQ(modalities.size(), 3u);
  EXPECT_TRUE(fs::exists(store.extraction_report()));
}

TEST_F(Pipeline, WithholdDropsModality) {
  cmd_extract(config({"withhold=TRACE"}));
  for (const auto& id : {"s01", "s02", "s03"}) {
    for (const auto& a : alerts::read_alerts(Store(out_).alerts_file(id))) EXPECT_NE(a.modality, alerts::Modality::Trace);
  }
}

TEST_F(Pipeline, BuildKgWritesRenderings) {
  EXPECT_TRUE(cmd_build_kg(config()).empty());
  EXPECT_TRUE(fs::exists(out_ / "kg" / "kg_list.txt"));
  EXPECT_TRUE(fs::exists(out_ / "kg" / "kg_json_object.txt"));
}

TEST_F(Pipeline, RunResumesCompleteTraces) {
  const auto c = config();
  cmd_extract(c);
  const auto first = cmd_run(c);
  EXPECT_EQ(first.executed, 6u);
  EXPECT_EQ(first.outcomes.at("COMPLETED"), 6u);
  const auto s03 = read_file(Store(out_).trace_file("s03"));

  const auto second = cmd_run(c);
  EXPECT_EQ(second.executed, 0u);
  EXPECT_EQ(second.resumed, 6u);

  // A trace without its end record is incomplete and runs again.
  const auto path = Store(out_).trace_file("s03");
  write_file_atomic(path, s03.substr(0, s03.rfind('\n', s03.size() - 2) + 1));
  ASSERT_FALSE(agent::read_trace_jsonl(path).complete);
  fs::remove(Store(out_).trace_file("s05"));
  const auto third = cmd_run(c);
  EXPECT_EQ(third.executed, 2u);
  EXPECT_EQ(third.resumed, 4u);
  EXPECT_EQ(read_file(path), s03);

  const auto manifest = read_json(Store(out_).manifest());
  EXPECT_EQ(manifest["config_hash"], config_hash(c));
  EXPECT_EQ(manifest["scenarios"].size(), 6u);
  EXPECT_TRUE(manifest["complete"].get<bool>());
}

TEST_F(Pipeline, TraceHeaderCarriesPrompt) {
  const auto c = config();
  cmd_extract(c);
  cmd_run(c);
  const auto stored = agent::read_trace_jsonl(Store(out_).trace_file("s01"));
  EXPECT_EQ(stored.header["workflow"], "REACT");
  EXPECT_EQ(stored.header["prompt"].size(), 2u);
  EXPECT_EQ(stored.end["hypotheses"].size(), 3u);
}

TEST_F(Pipeline, MissingScriptIsAnError) {
  const auto empty = test::scratch_dir("no_scripts");
  const auto c = config({"agent.script_dir=" + str(empty)});
  cmd_extract(c);
  const auto s = cmd_run(c);
  EXPECT_EQ(s.errors.size(), 6u);
  EXPECT_EQ(s.not_run, 6u);
  EXPECT_FALSE(read_json(Store(out_).manifest())["complete"].get<bool>());
}

TEST_F(Pipeline, RepeatedEndpointFailuresAbort) {
  const auto empty = test::scratch_dir("failing_scripts");
  write_file_atomic(empty / "fail.json", R"([{"error": "unauthorized", "retryable": false}])");
  const auto c = config({"agent.script_dir=" + str(empty), "agent.default_script=" + str(empty / "fail.json"),
                         "parallelism=1", "max_endpoint_failures=2"});
  cmd_extract(c);
  const auto s = cmd_run(c);
  EXPECT_TRUE(s.aborted);
  EXPECT_EQ(s.outcomes.at("ENDPOINT_ERROR"), 2u);
  EXPECT_EQ(s.not_run, 4u);
  const auto manifest = read_json(Store(out_).manifest());
  EXPECT_EQ(manifest["scenarios"].size(), 6u);
  EXPECT_FALSE(manifest["complete"].get<bool>());
}

TEST_F(Pipeline, PlanExecuteAlwaysToolHitsIterationCap) {
  const auto empty = test::scratch_dir("no_plan_scripts");
  const auto c = config({"workflow=PLAN_EXECUTE", "agent.script_dir=" + str(empty),
                         "agent.default_script=" + str(test::fixture_dir() / "scripts" / "always_tool_plan.json")});
  cmd_extract(c);
  const auto s = cmd_run(c);
  EXPECT_EQ(s.outcomes.at("RECURSION_LIMIT"), 6u);
  const auto stored = agent::read_trace_jsonl(Store(out_).trace_file("s02"));
  EXPECT_EQ(stored.trace.iterations, 50);
  EXPECT_TRUE(agent::check_alternation(stored.trace));
  // Execution errors score as incorrect everywhere.
  const auto summary = cmd_score(c);
  for (const auto& [m, avg] : summary.avg) EXPECT_EQ(avg, 0.0);
}

TEST_F(Pipeline, ScoreAndHoldoutComparison) {
  const auto full_dir = out_ / "full";
  const auto full = test::fixture_config(full_dir);
  cmd_extract(full);
  cmd_run(full);
  const auto summary = cmd_score(full);
  EXPECT_EQ(summary.samples, 6u);
  EXPECT_TRUE(fs::exists(full_dir / "scores" / "scores.csv"));
  EXPECT_EQ(read_correctness(full_dir / "scores" / "correctness.jsonl").size(), 6u);

  const auto held = test::fixture_config(out_ / "held", {"withhold=LOG", "compare_to=" + str(full_dir)});
  cmd_extract(held);
  cmd_run(held);
  cmd_score(held);
  const auto csv = read_file(out_ / "held" / "scores" / "holdout.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST_F(Pipeline, ScoreNeedsTraces) {
  const auto c = config();
  cmd_extract(c);
  EXPECT_THROW(cmd_score(c), Error);
}

TEST_F(Pipeline, JudgeRetriesAndQuota) {
  auto c = config();
  cmd_extract(c);
  cmd_run(c);
  cmd_score(c);
  const auto s = cmd_judge(c);
  EXPECT_EQ(s.sampled, 6u);
  EXPECT_EQ(s.annotated, 6u);
  EXPECT_EQ(s.parse_retries, 2u);
  EXPECT_TRUE(s.failed.empty());
  const auto annotations = read_annotations(out_ / "judge" / "annotations.jsonl");
  ASSERT_EQ(annotations.size(), 6u);
  const auto s05 = std::find_if(annotations.begin(), annotations.end(), [](const auto& a) { return a.trace_id == "s05"; });
  ASSERT_NE(s05, annotations.end());
  EXPECT_FALSE(s05->affected_top_hypothesis.empty());
  EXPECT_TRUE(fs::exists(out_ / "judge" / "prevalence.csv"));
  EXPECT_TRUE(fs::exists(out_ / "judge" / "risk.csv"));

  const auto strict = cmd_judge(config({"judge.max_attempts=1"}));
  EXPECT_EQ(strict.failed, std::vector<std::string>{"s03"});
  EXPECT_EQ(read_json(out_ / "judge" / "failures.json").size(), 1u);

  const auto few = cmd_judge(config({"judge.quota=2"}));
  EXPECT_EQ(few.sampled, 2u);
}

TEST_F(Pipeline, ReportSummarisesStages) {
  const auto c = config();
  cmd_extract(c);
  cmd_run(c);
  cmd_score(c);
  cmd_judge(c);
  const auto text = cmd_report(c);
  EXPECT_EQ(read_file(out_ / "report.md"), text);
  EXPECT_NE(text.find("| agent | LA |"), std::string::npos);
  EXPECT_NE(text.find("COMPLETED"), std::string::npos);
  EXPECT_NE(text.find("RF-"), std::string::npos);
  EXPECT_EQ(text.find("elapsed"), std::string::npos);
}

int cli(const std::string& args) {
  const std::string cmd = std::string(RCA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(Pipeline, CliExitCodes) {
  const auto cfg = (test::fixture_dir() / "config.json").string();
  const auto out = "-o " + out_.string();
  EXPECT_EQ(cli("--help"), 0);
  EXPECT_NE(cli("extract"), 0);
  EXPECT_NE(cli("run -c /nonexistent.json"), 0);
  EXPECT_NE(cli("score -c " + cfg + " " + out), 0);
  EXPECT_EQ(cli("extract -c " + cfg + " " + out), 0);
  EXPECT_EQ(cli("build-kg -c " + cfg + " " + out), 0);
  EXPECT_EQ(cli("run -c " + cfg + " " + out + " --workflow STRAIGHT_SHOT --set agent.script_dir=" +
                (test::fixture_dir() / "scripts" / "straight_shot").string()),
            0);
  EXPECT_EQ(cli("score -c " + cfg + " " + out), 0);
  EXPECT_EQ(cli("judge -c " + cfg + " " + out), 0);
  EXPECT_EQ(cli("report -c " + cfg + " " + out), 0);
  EXPECT_TRUE(fs::exists(out_ / "report.md"));
  EXPECT_NE(cli("judge -c " + cfg + " " + out + " --set judge.max_attempts=1"), 0);
  EXPECT_NE(cli("run -c " + cfg + " -o " + (out_ / "bad").string() + " --set k=5"), 0);
}

}  // namespace
}  // namespace rca::harness
