// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "rca/agent/endpoint.hpp"
#include "rca/agent/final_answer.hpp"
#include "rca/agent/http_endpoint.hpp"
#include "rca/agent/prompt.hpp"
#include "rca/agent/trace.hpp"
#include "rca/agent/workflows.hpp"
#include "rca/common/error.hpp"
#include "support.hpp"

namespace rca::agent {
namespace {

using nlohmann::json;

const char* kAnswer =
    "Final Answer:\n\n"
    "1. Type: high memory usage\nDescription: memory grows.\nLocation: a\nJustification: cpu alert.\n"
    "Propagation Path: b --(calls)--> a\n\n"
    "2. **Type**: session timeout\n- **Location**: b\n- Description: slow logins.\n"
    "- Justification: PD on b.\n- Propagation Path: b\n\n"
    "3. Type: disk full\nLocation: ghost\nDescription: d.\nJustification: j.\nPropagation Path: ghost --(calls)--> a\n";

kgraph::KnowledgeGraph tiny_graph() {
  kgraph::EntitySchema s;
  s.entity_types = {{"Service", "", {"high memory usage", "session timeout"}}};
  s.relationship_types = {{"calls", "", "", ""}};
  return kgraph::KnowledgeGraph::build(s, {{"a", "Service", {}}, {"b", "Service", {}}}, {{"b", "calls", "a", {}}});
}

AssistantMessage text(std::string t) { return {std::move(t), std::nullopt}; }
AssistantMessage tool(std::string id, std::string name, std::string args) {
  return {"calling", ToolInvocation{std::move(id), std::move(name), std::move(args)}};
}

PromptInputs inputs() {
  PromptInputs in;
  in.entity_schema = "- Service";
  in.relationship_schema = "- calls";
  in.alerts_text = "2025-09-01 12:00:00.000 | METRIC | a | cpu | up\n";
  in.fault_types = {"high memory usage", "session timeout"};
  in.fault_entity_types = {"Service"};
  in.kg_text = "Nodes:\n- a (Service)\n- b (Service)\nEdges:\n- b --(calls)--> a\n";
  return in;
}

TEST(Messages, JsonRoundTrips) {
  ChatMessage m{Role::Assistant, "hi", ToolInvocation{"1", "check_node_existence", "{\"node\":\"a\"}"}, ""};
  EXPECT_EQ(chat_message_from_json(to_json(m)), m);
  const auto a = assistant_message_from_json(json{{"content", "x"},
                                                  {"tool_call", {{"id", "c"}, {"name", "t"}, {"arguments", {{"k", 1}}}}}});
  ASSERT_TRUE(a.tool_call.has_value());
  EXPECT_EQ(a.tool_call->arguments, "{\"k\":1}");
  EXPECT_EQ(parse_role(to_string(Role::Tool)), Role::Tool);
}

TEST(Endpoint, ScriptedReplaysAndInjectsFaults) {
  ScriptedEndpoint e(ScriptedEndpoint::parse_script(json::array({{{"error", "timeout"}, {"retryable", true}},
                                                                 {{"content", "ok"}}})));
  int retries = 0;
  EXPECT_EQ(complete_with_retry(e, {}, {}, retries).content, "ok");
  EXPECT_EQ(retries, 1);
  EXPECT_EQ(e.calls(), 2u);
  try {
    e.complete({});
    FAIL() << "script should be exhausted";
  } catch (const EndpointError& err) {
    EXPECT_FALSE(err.retryable());
  }
}

TEST(Endpoint, RetriesRunOut) {
  ScriptedEndpoint e({InjectedFault{"timeout", true}, InjectedFault{"timeout", true}, text("late")});
  int retries = 0;
  RetryPolicy p;
  p.max_retries = 1;
  EXPECT_THROW(complete_with_retry(e, {}, p, retries), EndpointError);
  EXPECT_EQ(retries, 1);
  ScriptedEndpoint fatal({InjectedFault{"auth", false}, text("never")});
  retries = 0;
  EXPECT_THROW(complete_with_retry(fatal, {}, {}, retries), EndpointError);
  EXPECT_EQ(retries, 0);
}

TEST(Workflows, SplitThinkAndPlans) {
  EXPECT_EQ(split_think("<think>hmm</think>\nanswer"), (std::pair<std::string, std::string>{"hmm", "answer"}));
  EXPECT_EQ(split_think("plain").first, "");
  EXPECT_EQ(parse_numbered_plan("Plan:\n1. look\n2) check\nnote\n3. done"),
            (std::vector<std::string>{"look", "check", "done"}));
  EXPECT_TRUE(parse_numbered_plan("no steps here").empty());
}

TEST(Workflows, StraightShotRecordsThinkAndAnswer) {
  ScriptedEndpoint e({text(std::string("<think>reasoning</think>") + kAnswer)});
  const auto trace = run_straight_shot(e, build_prompt(Workflow::StraightShot, inputs()));
  EXPECT_EQ(trace.outcome, Outcome::Completed);
  ASSERT_EQ(trace.steps.size(), 2u);
  EXPECT_EQ(trace.steps[0].kind, StepKind::Thought);
  EXPECT_EQ(trace.final_text().rfind("Final Answer:", 0), 0u);
  EXPECT_TRUE(e.requests()[0].tools.empty());
  EXPECT_EQ(trace.iterations, 1);
}

TEST(Workflows, ReactHandlesMalformedCalls) {
  const auto g = tiny_graph();
  const std::vector<alerts::Alert> none;
  toolbox::Toolbox tools(g, none);
  ScriptedEndpoint e({tool("1", "check_node_existence", "{not json"),
                      tool("2", "check_node_existence", R"({"node":"a","reasoning":"r"})"), text(kAnswer)});
  const auto trace = run_react(e, build_prompt(Workflow::React, inputs()), tools);
  EXPECT_EQ(trace.outcome, Outcome::Completed);
  EXPECT_TRUE(check_alternation(trace));
  EXPECT_EQ(trace.endpoint_calls, 3);
  EXPECT_EQ(trace.tool_calls, 2);
  EXPECT_EQ(trace.iterations, 5);
  int observations = 0;
  for (const auto& s : trace.steps) {
    if (s.kind != StepKind::Observation) continue;
    ++observations;
    ASSERT_TRUE(s.observation.has_value());
    if (observations == 1) {
      EXPECT_EQ(s.observation->error_kind, toolbox::ToolErrorKind::BadArgs);
    } else {
      EXPECT_EQ(s.observation->rendered, "exists: true");
    }
  }
  EXPECT_EQ(observations, 2);
  // The tool message answers the invocation id.
  const auto& last = e.requests().back().messages.back();
  EXPECT_EQ(last.role, Role::Tool);
  EXPECT_EQ(last.tool_call_id, "2");
  EXPECT_FALSE(e.requests()[0].tools.empty());
}

TEST(Workflows, ReactStopsAtIterationCap) {
  const auto g = tiny_graph();
  const std::vector<alerts::Alert> none;
  toolbox::Toolbox tools(g, none);
  RepeatingEndpoint e(tool("x", "check_node_existence", R"({"node":"a","reasoning":"again"})"));
  WorkflowOptions opt;
  opt.max_iterations = 7;
  const auto trace = run_react(e, build_prompt(Workflow::React, inputs()), tools, opt);
  EXPECT_EQ(trace.outcome, Outcome::RecursionLimit);
  EXPECT_EQ(trace.iterations, 7);
  EXPECT_TRUE(check_alternation(trace));
  EXPECT_TRUE(trace.final_text().empty());
}

TEST(Workflows, EndpointFailureEndsRun) {
  const auto g = tiny_graph();
  const std::vector<alerts::Alert> none;
  toolbox::Toolbox tools(g, none);
  ScriptedEndpoint e({InjectedFault{"boom", false}});
  const auto trace = run_react(e, build_prompt(Workflow::React, inputs()), tools);
  EXPECT_EQ(trace.outcome, Outcome::EndpointError);
  EXPECT_FALSE(trace.error.empty());
}

TEST(Workflows, PlanExecuteReplansAndAnswers) {
  const auto g = tiny_graph();
  const std::vector<alerts::Alert> none;
  toolbox::Toolbox tools(g, none);
  ScriptedEndpoint e({text("1. look at a\n2. look at b"),
                      tool("p1", "check_node_existence", R"({"node":"a","reasoning":"step"})"), text("a exists"),
                      text("1. inspect b closely"), text("b is slow"), text(kAnswer)});
  const auto trace = run_plan_and_execute(e, inputs(), tools);
  EXPECT_EQ(trace.outcome, Outcome::Completed);
  EXPECT_TRUE(check_alternation(trace));
  int plan_steps = 0, replans = 0;
  for (const auto& s : trace.steps) {
    plan_steps += s.kind == StepKind::PlanStep;
    replans += s.kind == StepKind::Replan;
  }
  EXPECT_EQ(plan_steps, 2);
  EXPECT_EQ(replans, 1);
  EXPECT_EQ(trace.endpoint_calls, 6);
}

TEST(Workflows, PlanExecuteWithoutPlanIsReplanError) {
  const auto g = tiny_graph();
  const std::vector<alerts::Alert> none;
  toolbox::Toolbox tools(g, none);
  ScriptedEndpoint planless({text("I will just think about it.")});
  EXPECT_EQ(run_plan_and_execute(planless, inputs(), tools).outcome, Outcome::ReplanError);
  ScriptedEndpoint bad_replan({text("1. look"), text("done"), text("no idea")});
  EXPECT_EQ(run_plan_and_execute(bad_replan, inputs(), tools).outcome, Outcome::ReplanError);
}

TEST(Prompt, ValidatesInputs) {
  auto in = inputs();
  const auto msgs = build_prompt(Workflow::React, in);
  ASSERT_EQ(msgs.size(), 2u);
  EXPECT_EQ(msgs[0].role, Role::System);
  EXPECT_NE(msgs[1].content.find(in.alerts_text), std::string::npos);
  EXPECT_NE(msgs[1].content.find("session timeout"), std::string::npos);
  EXPECT_NE(build_prompt(Workflow::StraightShot, in)[1].content.find(in.kg_text), std::string::npos);
  in.kg_text.clear();
  EXPECT_THROW(build_prompt(Workflow::StraightShot, in), ValidationError);
  EXPECT_NO_THROW(build_prompt(Workflow::React, in));
  in.alerts_text.clear();
  EXPECT_THROW(build_prompt(Workflow::React, in), ValidationError);
  EXPECT_EQ(parse_workflow("plan_execute"), Workflow::PlanExecute);
  EXPECT_THROW(parse_workflow("tree_of_thought"), ValidationError);
}

TEST(FinalAnswer, ParsesAndFlags) {
  const auto g = tiny_graph();
  const auto r = parse_final_answer(std::string("preamble\n") + kAnswer, &g, {"high memory usage", "session timeout"});
  EXPECT_FALSE(r.parse_failure);
  ASSERT_EQ(r.hypotheses.size(), 3u);
  EXPECT_EQ(r.hypotheses[0].location, "a");
  EXPECT_EQ(r.hypotheses[0].path.steps.size(), 1u);
  EXPECT_EQ(r.hypotheses[1].fault_type, "session timeout");
  EXPECT_EQ(r.hypotheses[1].location, "b");
  EXPECT_TRUE(r.hypotheses[1].path_unparsed);
  EXPECT_TRUE(r.hypotheses[2].unknown_location);
  EXPECT_TRUE(r.hypotheses[2].unknown_fault_type);
  EXPECT_EQ(r.hypotheses[2].rank, 3);
}

TEST(FinalAnswer, CountDiagnostics) {
  const auto none = parse_final_answer("no marker here", nullptr, {});
  EXPECT_TRUE(none.parse_failure);
  const auto one = parse_final_answer("Final Answer:\nType: x\nLocation: a\n", nullptr, {});
  EXPECT_FALSE(one.parse_failure);
  EXPECT_EQ(one.hypotheses.size(), 1u);
  ASSERT_FALSE(one.diagnostics.empty());
  EXPECT_NE(one.diagnostics[0].find("expected 3 hypotheses, found 1"), std::string::npos);
  std::string four = "Final Answer:\n";
  for (int i = 0; i < 4; ++i) four += "Type: t\nLocation: l" + std::to_string(i) + "\n";
  const auto many = parse_final_answer(four, nullptr, {});
  EXPECT_EQ(many.hypotheses.size(), 3u);
  EXPECT_FALSE(many.diagnostics.empty());
}

TEST(FinalAnswer, PathParsing) {
  const auto p = parse_propagation_path(" a --(calls)--> b --(hosted_on)--> h ");
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(kgraph::format_path(*p), "a --(calls)--> b --(hosted_on)--> h");
  EXPECT_FALSE(parse_propagation_path("a").has_value());
  EXPECT_FALSE(parse_propagation_path("a --(calls)--> ").has_value());
}

TEST(Trace, JsonlRoundTrip) {
  ScriptedEndpoint e({text(kAnswer)});
  const auto trace = run_straight_shot(e, build_prompt(Workflow::StraightShot, inputs()));
  const auto text = trace_to_jsonl({{"scenario_id", "s"}}, trace, {{"final_text", trace.final_text()}});
  const auto stored = parse_trace_jsonl(text);
  EXPECT_EQ(stored.trace, trace);
  EXPECT_TRUE(stored.complete);
  EXPECT_EQ(stored.header["scenario_id"], "s");
  EXPECT_FALSE(parse_trace_jsonl(text.substr(0, text.rfind("{\"endpoint_calls\""))).complete);
}

TEST(Trace, AlternationChecker) {
  InferenceTrace t;
  TraceStep action;
  action.kind = StepKind::Action;
  action.action = ToolInvocation{"1", "x", "{}"};
  t.steps = {TraceStep::thought("t"), action};
  EXPECT_FALSE(check_alternation(t));
  TraceStep obs;
  obs.kind = StepKind::Observation;
  obs.observation = toolbox::ToolResult::success("ok");
  t.steps.push_back(obs);
  EXPECT_TRUE(check_alternation(t));
  t.steps.push_back(obs);
  EXPECT_FALSE(check_alternation(t));
}

class HttpFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      const int n = ++hits_;
      last_auth_ = req.get_header_value("Authorization");
      last_body_ = json::parse(req.body);
      if (n == 1 && fail_first_) {
        res.status = 503;
        return;
      }
      if (status_ != 200) {
        res.status = status_;
        return;
      }
      json reply = {{"choices",
                     {{{"message",
                        {{"role", "assistant"},
                         {"content", "checking"},
                         {"tool_calls",
                          {{{"id", "c1"},
                            {"type", "function"},
                            {"function", {{"name", "check_node_existence"}, {"arguments", "{\"node\":\"a\"}"}}}}}}}}}}}};
      res.set_content(reply.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  HttpEndpoint endpoint() {
    HttpEndpointConfig c;
    c.base_url = "http://127.0.0.1:" + std::to_string(port_);
    c.model = "test-model";
    c.api_key = "secret";
    c.timeout = std::chrono::seconds(5);
    return HttpEndpoint(c);
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> hits_{0};
  bool fail_first_ = false;
  int status_ = 200;
  std::string last_auth_;
  json last_body_;
};

TEST_F(HttpFixture, SendsRequestAndParsesToolCall) {
  auto ep = endpoint();
  ChatRequest req;
  req.messages = {ChatMessage::system("sys"), ChatMessage::user("hi")};
  req.tools = toolbox::tool_schemas();
  req.settings.max_tokens = 64;
  const auto reply = ep.complete(req);
  EXPECT_EQ(reply.content, "checking");
  ASSERT_TRUE(reply.tool_call.has_value());
  EXPECT_EQ(reply.tool_call->name, "check_node_existence");
  EXPECT_EQ(last_auth_, "Bearer secret");
  EXPECT_EQ(last_body_["model"], "test-model");
  EXPECT_EQ(last_body_["messages"].size(), 2u);
  EXPECT_EQ(last_body_["max_tokens"], 64);
  EXPECT_EQ(last_body_["tools"].size(), 6u);
}

TEST_F(HttpFixture, ServerErrorsAreRetryable) {
  fail_first_ = true;
  auto ep = endpoint();
  int retries = 0;
  EXPECT_EQ(complete_with_retry(ep, {}, {}, retries).content, "checking");
  EXPECT_EQ(retries, 1);
}

TEST_F(HttpFixture, ClientErrorsAreNot) {
  status_ = 401;
  auto ep = endpoint();
  try {
    ep.complete({});
    FAIL() << "expected EndpointError";
  } catch (const EndpointError& e) {
    EXPECT_FALSE(e.retryable());
  }
}

TEST(Http, UnreachableServerIsRetryable) {
  HttpEndpointConfig c;
  c.base_url = "http://127.0.0.1:1";
  c.timeout = std::chrono::seconds(2);
  HttpEndpoint ep(c);
  try {
    ep.complete({});
    FAIL() << "expected EndpointError";
  } catch (const EndpointError& e) {
    EXPECT_TRUE(e.retryable());
  }
}

TEST(Http, WireShapes) {
  EXPECT_THROW(assistant_from_wire(json{{"choices", json::array()}}), EndpointError);
  ChatRequest req;
  req.messages = {ChatMessage{Role::Assistant, "", ToolInvocation{"c", "t", "{}"}, ""},
                  ChatMessage{Role::Tool, "result", std::nullopt, "c"}};
  const auto wire = chat_request_to_wire(req, "m");
  EXPECT_EQ(wire["messages"][0]["tool_calls"][0]["function"]["name"], "t");
  EXPECT_EQ(wire["messages"][1]["tool_call_id"], "c");
  EXPECT_FALSE(wire.contains("tools"));
}

}  // namespace
}  // namespace rca::agent
