// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "rca/agent/prompt.hpp"
#include "rca/common/error.hpp"
#include "rca/judge/annotation.hpp"
#include "rca/judge/judge_prompt.hpp"
#include "rca/judge/sampling.hpp"
#include "rca/judge/statistics.hpp"
#include "rca/judge/taxonomy.hpp"
#include "support.hpp"

namespace rca::judge {
namespace {

JudgeParseErrorKind error_kind(std::string_view raw) {
  try {
    parse_judge_output(raw);
  } catch (const JudgeParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parsed without error: " << raw;
  return JudgeParseErrorKind::SchemaMismatch;
}

std::string fenced(const std::string& body) { return "Reasoning first.\n```json\n" + body + "\n```\n"; }

TEST(Taxonomy, SixteenFailuresPlusGate) {
  const auto& all = taxonomy();
  ASSERT_EQ(all.size(), 17u);
  EXPECT_EQ(all.front().id, kDivergenceGate);
  const auto ids = analysis_failure_ids();
  ASSERT_EQ(ids.size(), 16u);
  EXPECT_EQ(ids.front(), "RF-01");
  EXPECT_EQ(ids.back(), "RF-16");
  for (const auto& rf : all) {
    EXPECT_FALSE(rf.name.empty()) << rf.id;
    EXPECT_LE(rf.min_severity, rf.max_severity);
  }
  EXPECT_EQ(find_failure("RF-12")->min_severity, 3);
  EXPECT_EQ(find_failure("RF-02")->min_severity, 1);
  EXPECT_EQ(find_failure("RF-99"), nullptr);
}

TEST(Taxonomy, NormalizesIds) {
  EXPECT_EQ(normalize_rf_id("rf-1"), "RF-01");
  EXPECT_EQ(normalize_rf_id(" RF01 "), "RF-01");
  EXPECT_EQ(normalize_rf_id("RF_16"), "RF-16");
  EXPECT_EQ(normalize_rf_id("RF-00"), "RF-00");
  // Normalisation is syntactic; membership is checked by find_failure.
  EXPECT_EQ(normalize_rf_id("rf17"), "RF-17");
  EXPECT_EQ(find_failure("RF-17"), nullptr);
  EXPECT_FALSE(normalize_rf_id("failure 3").has_value());
}

TEST(Annotation, ParsesTolerantForms) {
  const auto a = parse_judge_output(
      "draft:\n```json\n{\"failures_identified\": []}\n```\nfinal:\n''' json\n"
      "{\"failures_identified\": [{\"type\": \"rf-3\", \"model_claim\": \"c\", \"rationale\": \"r\", "
      "\"severity\": 2.0}, {\"type\": \"RF-11\", \"model_claim\": \"c2\", \"rationale\": \"r2\", "
      "\"severity\": \"4 (high)\"}], \"affected_top_hypothesis\": \"RF-11, RF-03, RF-11\"}\n'''");
  ASSERT_EQ(a.failures.size(), 2u);
  EXPECT_EQ(a.failures[0].type, "RF-03");
  EXPECT_EQ(a.failures[0].severity, 2);
  EXPECT_EQ(a.failures[1].severity, 4);
  EXPECT_EQ(a.affected_top_hypothesis, (std::vector<std::string>{"RF-11", "RF-03"}));
  EXPECT_TRUE(a.has("RF-11"));
  EXPECT_FALSE(a.has("RF-01"));
}

TEST(Annotation, FenceVariants) {
  const std::string body = R"({"failures_identified": [], "affected_top_hypothesis": []})";
  for (const auto& raw : {"```" + body + "```", "'''\n" + body + "\n'''", "```JSON \n" + body + "\n```",
                          "```json\n{}\n```\nthen\n'''json\n" + body + "\n'''"}) {
    EXPECT_NO_THROW(parse_judge_output(raw)) << raw;
  }
}

TEST(Annotation, EmptyAnnotationIsValid) {
  const auto a = parse_judge_output(fenced(R"({"failures_identified": [], "affected_top_hypothesis": []})"));
  EXPECT_TRUE(a.failures.empty());
}

TEST(Annotation, DistinctErrorKinds) {
  EXPECT_EQ(error_kind("no block at all"), JudgeParseErrorKind::NoFencedBlock);
  EXPECT_EQ(error_kind(fenced("{not json")), JudgeParseErrorKind::MalformedJson);
  EXPECT_EQ(error_kind(fenced(R"({"failures": []})")), JudgeParseErrorKind::SchemaMismatch);
  EXPECT_EQ(error_kind(fenced(R"({"failures_identified": [{"type": "RF-02"}]})")),
            JudgeParseErrorKind::SchemaMismatch);
  EXPECT_EQ(error_kind(fenced(
                R"({"failures_identified": [{"type": "RF-42", "model_claim": "", "rationale": "", "severity": 1}]})")),
            JudgeParseErrorKind::UnknownRfId);
  EXPECT_EQ(error_kind(fenced(
                R"({"failures_identified": [{"type": "RF-12", "model_claim": "", "rationale": "", "severity": 2}]})")),
            JudgeParseErrorKind::SeverityOutOfRange);
  EXPECT_EQ(error_kind(fenced(
                R"({"failures_identified": [{"type": "RF-02", "model_claim": "", "rationale": "", "severity": 6}]})")),
            JudgeParseErrorKind::SeverityOutOfRange);
  EXPECT_EQ(error_kind(fenced(R"({"failures_identified": [], "affected_top_hypothesis": ["RF-04"]})")),
            JudgeParseErrorKind::AffectedNotIdentified);
}

TEST(Annotation, ErrorMessageCarriesKind) {
  try {
    parse_judge_output("nothing");
    FAIL();
  } catch (const JudgeParseError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("NO_FENCED_BLOCK", 0), 0u);
  }
}

TEST(Annotation, JsonKeepsTraceId) {
  JudgeAnnotation a;
  a.trace_id = "t1";
  a.failures = {{"RF-05", "claim", "why", 3}};
  a.affected_top_hypothesis = {"RF-05"};
  EXPECT_EQ(annotation_from_json(to_json(a)), a);
  EXPECT_EQ(render_judge_output(a).find("t1"), std::string::npos);
  auto back = parse_judge_output(render_judge_output(a));
  back.trace_id = "t1";
  EXPECT_EQ(back, a);
}

agent::InferenceTrace sample_trace() {
  agent::InferenceTrace t;
  t.steps.push_back(agent::TraceStep::thought("Check the web tier."));
  agent::TraceStep action;
  action.kind = agent::StepKind::Action;
  action.action = agent::ToolInvocation{"c1", "check_node_existence", R"({"node":"web1","reasoning":"r"})"};
  t.steps.push_back(action);
  agent::TraceStep obs;
  obs.kind = agent::StepKind::Observation;
  obs.observation = toolbox::ToolResult::success("exists: true");
  t.steps.push_back(obs);
  t.steps.push_back(agent::TraceStep::final_answer("Final Answer:\n1. Type: x\nLocation: web1"));
  return t;
}

TEST(JudgePrompt, FramesHistoryAndGroundTruth) {
  JudgeInputs in;
  in.task_prompt = {agent::ChatMessage::system("sys"), agent::ChatMessage::user("Find the root cause.")};
  in.trace = sample_trace();
  in.structured_response = "None";
  in.gt_location = "web1";
  in.gt_fault_type = "high memory usage";
  const auto msgs = build_judge_prompt(in);
  ASSERT_EQ(msgs.size(), 2u);
  EXPECT_EQ(msgs[0].content, judge_system_message());
  const auto& user = msgs[1].content;
  EXPECT_EQ(user.rfind(judge_instructions(), 0), 0u);
  EXPECT_NE(user.find("web1 (location) and high memory usage (type)"), std::string::npos);
  const auto begin = user.find("<begin chat history>\n");
  const auto end = user.rfind("<end chat history>");
  ASSERT_NE(begin, std::string::npos);
  ASSERT_NE(end, std::string::npos);
  EXPECT_LT(begin, user.find("=== Human Message ===\nFind the root cause."));
  EXPECT_LT(user.find("Tool call: check_node_existence("), end);
  EXPECT_NE(user.find("=== Tool Message ===\nexists: true"), std::string::npos);
  EXPECT_NE(user.find("failures_identified"), std::string::npos);

  in.task_prompt = {agent::ChatMessage::system("sys")};
  EXPECT_THROW(build_judge_prompt(in), ValidationError);
}

TEST(JudgePrompt, ChatHistoryTurnOrder) {
  const auto h = render_chat_history({agent::ChatMessage::user("task")}, sample_trace());
  const auto human = h.find("=== Human Message ===");
  const auto ai = h.find("=== AI Message ===");
  const auto tool = h.find("=== Tool Message ===");
  const auto final_ai = h.rfind("=== AI Message ===");
  EXPECT_LT(human, ai);
  EXPECT_LT(ai, tool);
  EXPECT_LT(tool, final_ai);
  EXPECT_NE(h.find("Final Answer:", final_ai), std::string::npos);
}

TEST(Sampling, QuotaPerCellDeterministic) {
  std::vector<TraceTag> traces;
  for (int i = 0; i < 30; ++i) {
    traces.push_back({"a" + std::to_string(i), "A", "m1", "REACT"});
    traces.push_back({"b" + std::to_string(i), "A", "m1", "PLAN_EXECUTE"});
  }
  traces.push_back({"c0", "B", "m1", "REACT"});
  const auto s = stratified_sample(traces, 5, 42);
  EXPECT_EQ(s.size(), 11u);
  EXPECT_EQ(s, stratified_sample(traces, 5, 42));
  std::vector<TraceTag> shuffled(traces.rbegin(), traces.rend());
  EXPECT_EQ(s, stratified_sample(shuffled, 5, 42));
  EXPECT_NE(s, stratified_sample(traces, 5, 43));
  // Cells come in key order (dataset, model, workflow), ids sorted within.
  ASSERT_EQ(s.back(), "c0");
  EXPECT_EQ(s.front().front(), 'b');
  EXPECT_TRUE(std::is_sorted(s.begin(), s.begin() + 5));
  EXPECT_TRUE(std::is_sorted(s.begin() + 5, s.begin() + 10));
  EXPECT_EQ(std::set<std::string>(s.begin(), s.end()).size(), s.size());
  EXPECT_EQ(stratified_sample(traces, 100, 1).size(), traces.size());
}

TEST(Statistics, WilsonEdges) {
  const auto zero = wilson_ci(0, 10);
  EXPECT_EQ(zero.lower, 0.0);
  EXPECT_GT(zero.upper, 0.0);
  const auto all = wilson_ci(10, 10);
  EXPECT_EQ(all.upper, 1.0);
  EXPECT_LT(all.lower, 1.0);
  // Closed form at z = 1.959963984540054.
  const double z = 1.959963984540054, n = 40, p = 0.25;
  const double centre = (p + z * z / (2 * n)) / (1 + z * z / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / (1 + z * z / n);
  const auto ci = wilson_ci(10, 40);
  EXPECT_NEAR(ci.lower, centre - half, 1e-12);
  EXPECT_NEAR(ci.upper, centre + half, 1e-12);
  EXPECT_THROW(wilson_ci(0, 0), std::invalid_argument);
  EXPECT_THROW(wilson_ci(5, 4), std::invalid_argument);
}

TEST(Statistics, RiskUndefinedCells) {
  const auto none = risk_from_counts(0, 0, 3, 10);
  EXPECT_FALSE(none.defined);
  EXPECT_FALSE(none.rd.has_value());
  EXPECT_TRUE(none.p0.has_value());
  const auto zero_base = risk_from_counts(2, 4, 0, 6);
  EXPECT_TRUE(zero_base.defined);
  EXPECT_FALSE(zero_base.rr.has_value());
  EXPECT_DOUBLE_EQ(*zero_base.rd, 0.5);
}

TEST(Statistics, NewcombeInterval) {
  const auto s = risk_from_counts(50, 100, 50, 100);
  const auto w = wilson_ci(50, 100);
  const double half = std::sqrt(2.0) * (0.5 - w.lower);
  EXPECT_NEAR(s.ci_rd->lower, -half, 1e-12);
  EXPECT_NEAR(s.ci_rd->upper, half, 1e-12);
}

TEST(Statistics, RiskUsesAnyRankCorrectness) {
  std::vector<JudgedSample> samples(4);
  samples[0].annotation.failures = {{"RF-01", "", "", 2}};
  samples[0].correctness.location = {false, false, true};
  samples[1].annotation.failures = {{"RF-01", "", "", 2}};
  samples[2].correctness.location = {true, false, false};
  const auto s = risk_stats(samples, "RF-01", metrics::Measure::LA);
  EXPECT_EQ(s.n1, 2u);
  EXPECT_EQ(s.c1, 1u);
  EXPECT_EQ(s.n0, 2u);
  EXPECT_EQ(s.c0, 1u);
  EXPECT_EQ(*s.rd, 0.0);
  const auto csv = risk_csv({s, risk_from_counts(0, 0, 1, 1)});
  EXPECT_NE(csv.find("RF-01,LA,2,1,2,1,0.500000,0.500000,0.000000,1.000000,"), std::string::npos);
  EXPECT_NE(csv.find(",NA,NA,"), std::string::npos);
}

TEST(Statistics, PrevalencePerGroup) {
  std::vector<AnnotatedTrace> traces(3);
  for (auto& t : traces) {
    t.dataset = "A";
    t.model = "m";
    t.workflow = "REACT";
  }
  traces[0].annotation.failures = {{"RF-02", "", "", 1}, {"RF-00", "", "", 1}};
  traces[1].annotation.failures = {{"RF-02", "", "", 1}};
  traces[2].workflow = "PLAN_EXECUTE";
  const auto rows = prevalence(traces);
  EXPECT_EQ(rows.size(), 32u);
  for (const auto& r : rows) EXPECT_NE(r.rf, "RF-00");
  const auto it = std::find_if(rows.begin(), rows.end(),
                               [](const PrevalenceRow& r) { return r.workflow == "REACT" && r.rf == "RF-02"; });
  ASSERT_NE(it, rows.end());
  EXPECT_EQ(it->present, 2u);
  EXPECT_EQ(it->total, 2u);
  EXPECT_EQ(it->proportion, 1.0);
  EXPECT_EQ(prevalence_csv(rows).substr(0, 46), "dataset,model,workflow,rf,present,total,propor");
}

TEST(Statistics, KappaUndefinedWhenChanceIsCertain) {
  EXPECT_FALSE(cohens_kappa({true, true}, {true, true}).has_value());
  EXPECT_EQ(*cohens_kappa({true, false}, {false, true}), -1.0);
  EXPECT_THROW(cohens_kappa({true}, {}), std::invalid_argument);
}

}  // namespace
}  // namespace rca::judge
