// SPDX-License-Identifier: Apache-2.0
#include "rca/agent/workflows.hpp"

#include <regex>
#include <sstream>

namespace rca::agent {
namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

struct RecursionLimit {};

/// Shared bookkeeping for the agentic loops.
class Runner {
 public:
  Runner(ModelEndpoint& endpoint, toolbox::Toolbox* tools, const WorkflowOptions& options, InferenceTrace& trace)
      : endpoint_(endpoint), tools_(tools), options_(options), trace_(trace) {}

  AssistantMessage call(const std::vector<ChatMessage>& messages, bool with_tools) {
    if (trace_.iterations >= options_.max_iterations) throw RecursionLimit{};
    ChatRequest request;
    request.messages = messages;
    if (with_tools) request.tools = toolbox::tool_schemas();
    request.settings = options_.settings;
    ++trace_.iterations;
    ++trace_.endpoint_calls;
    return complete_with_retry(endpoint_, request, options_.retry, trace_.retries);
  }

  /// Records Action and Observation for `inv` and returns the observation
  /// text. Throws RecursionLimit, recording nothing, when no iteration is
  /// left for the dispatch, so the trace never ends on an unanswered Action.
  std::string dispatch(const ToolInvocation& inv) {
    if (trace_.iterations >= options_.max_iterations) throw RecursionLimit{};
    TraceStep action;
    action.kind = StepKind::Action;
    action.action = inv;
    trace_.steps.push_back(std::move(action));
    ++trace_.iterations;
    ++trace_.tool_calls;

    toolbox::ToolResult result;
    nlohmann::json args;
    bool parsed = true;
    try {
      args = nlohmann::json::parse(inv.arguments.empty() ? std::string("{}") : inv.arguments);
    } catch (const nlohmann::json::exception&) {
      parsed = false;
    }
    if (!parsed || !args.is_object()) {
      result = toolbox::ToolResult::failure(toolbox::ToolErrorKind::BadArgs,
                                            "Error: tool arguments are not a valid JSON object.");
    } else {
      result = tools_->call(toolbox::make_tool_call(inv.name, args));
    }
    TraceStep obs;
    obs.kind = StepKind::Observation;
    obs.observation = result;
    trace_.steps.push_back(std::move(obs));
    return result.rendered;
  }

 private:
  ModelEndpoint& endpoint_;
  toolbox::Toolbox* tools_;
  const WorkflowOptions& options_;
  InferenceTrace& trace_;
};

ChatMessage assistant_turn(const AssistantMessage& m) {
  ChatMessage c;
  c.role = Role::Assistant;
  c.content = m.content;
  c.tool_call = m.tool_call;
  return c;
}

ChatMessage tool_turn(const ToolInvocation& inv, std::string observation) {
  ChatMessage c;
  c.role = Role::Tool;
  c.content = std::move(observation);
  c.tool_call_id = inv.id;
  return c;
}

void fail(InferenceTrace& trace, Outcome outcome, std::string message) {
  trace.outcome = outcome;
  trace.error = std::move(message);
}

/// Runs the tool loop on `messages` until the model replies without a tool
/// call; returns that reply. Tool-call content is recorded as Thought.
AssistantMessage tool_loop(Runner& runner, std::vector<ChatMessage>& messages, InferenceTrace& trace) {
  for (;;) {
    auto reply = runner.call(messages, true);
    if (!reply.tool_call) return reply;
    auto [think, rest] = split_think(reply.content);
    if (!think.empty()) trace.steps.push_back(TraceStep::thought(think));
    if (!rest.empty()) trace.steps.push_back(TraceStep::thought(rest));
    messages.push_back(assistant_turn(reply));
    auto observation = runner.dispatch(*reply.tool_call);
    messages.push_back(tool_turn(*reply.tool_call, std::move(observation)));
  }
}

}  // namespace

std::pair<std::string, std::string> split_think(std::string_view text) {
  std::string think;
  std::string_view rest = text;
  for (;;) {
    const auto lead = rest.find_first_not_of(" \t\r\n");
    if (lead == std::string_view::npos || rest.substr(lead, kThinkOpen.size()) != kThinkOpen) break;
    const auto close = rest.find(kThinkClose, lead);
    if (close == std::string_view::npos) break;
    if (!think.empty()) think += '\n';
    think += trim(rest.substr(lead + kThinkOpen.size(), close - lead - kThinkOpen.size()));
    rest = rest.substr(close + kThinkClose.size());
  }
  return {think, trim(rest)};
}

std::vector<std::string> parse_numbered_plan(std::string_view text) {
  static const std::regex kLine(R"(^\s*(?:\*\*)?(?:Step\s+)?(\d+)\s*[.):]\s*(?:\*\*)?\s*(.+?)\s*$)",
                                std::regex::icase);
  std::vector<std::string> steps;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    if (std::regex_match(line, m, kLine)) {
      auto step = trim(m[2].str());
      if (!step.empty()) steps.push_back(std::move(step));
    }
  }
  return steps;
}

InferenceTrace run_straight_shot(ModelEndpoint& endpoint, const std::vector<ChatMessage>& prompt,
                                 const WorkflowOptions& options) {
  InferenceTrace trace;
  Runner runner(endpoint, nullptr, options, trace);
  try {
    const auto reply = runner.call(prompt, false);
    auto [think, rest] = split_think(reply.content);
    if (!think.empty()) trace.steps.push_back(TraceStep::thought(think));
    trace.steps.push_back(TraceStep::final_answer(rest));
    trace.outcome = Outcome::Completed;
  } catch (const EndpointError& e) {
    fail(trace, Outcome::EndpointError, e.what());
  } catch (const RecursionLimit&) {
    fail(trace, Outcome::RecursionLimit, "iteration limit reached");
  }
  return trace;
}

InferenceTrace run_react(ModelEndpoint& endpoint, const std::vector<ChatMessage>& prompt, toolbox::Toolbox& tools,
                         const WorkflowOptions& options) {
  InferenceTrace trace;
  Runner runner(endpoint, &tools, options, trace);
  auto messages = prompt;
  try {
    const auto reply = tool_loop(runner, messages, trace);
    auto [think, rest] = split_think(reply.content);
    if (!think.empty()) trace.steps.push_back(TraceStep::thought(think));
    trace.steps.push_back(TraceStep::final_answer(rest));
    trace.outcome = Outcome::Completed;
  } catch (const EndpointError& e) {
    fail(trace, Outcome::EndpointError, e.what());
  } catch (const RecursionLimit&) {
    fail(trace, Outcome::RecursionLimit,
         "iteration limit of " + std::to_string(options.max_iterations) + " reached without a final answer");
  }
  return trace;
}

InferenceTrace run_plan_and_execute(ModelEndpoint& endpoint, const PromptInputs& inputs, toolbox::Toolbox& tools,
                                    const WorkflowOptions& options) {
  InferenceTrace trace;
  Runner runner(endpoint, &tools, options, trace);
  try {
    const auto planner_reply = runner.call(build_prompt(Workflow::PlanExecute, inputs), false);
    const auto original = parse_numbered_plan(split_think(planner_reply.content).second);
    if (original.empty()) {
      fail(trace, Outcome::ReplanError, "planner returned no numbered plan steps");
      return trace;
    }
    for (std::size_t i = 0; i < original.size(); ++i) {
      TraceStep s;
      s.kind = StepKind::PlanStep;
      s.plan_index = static_cast<int>(i + 1);
      s.text = original[i];
      trace.steps.push_back(std::move(s));
    }

    std::vector<std::string> plan = original;
    std::vector<CompletedStep> done;
    for (;;) {
      if (plan.empty()) {
        fail(trace, Outcome::ReplanError, "plan is empty and no final answer was given");
        return trace;
      }
      // Executor: the plan shown to it has completed steps followed by the
      // current remainder.
      std::vector<std::string> shown;
      for (const auto& d : done) shown.push_back(d.step);
      shown.insert(shown.end(), plan.begin(), plan.end());
      auto messages = build_executor_prompt(inputs, shown, done.size());
      const auto step_reply = tool_loop(runner, messages, trace);
      auto [think, result] = split_think(step_reply.content);
      if (!think.empty()) trace.steps.push_back(TraceStep::thought(think));
      trace.steps.push_back(TraceStep::thought(result));
      done.push_back({plan.front(), result});
      const std::vector<std::string> remaining(plan.begin() + 1, plan.end());

      const auto replan_reply = runner.call(build_replanner_prompt(inputs, original, done), false);
      const auto text = split_think(replan_reply.content).second;
      if (text.find(kFinalAnswerPrefix) != std::string::npos) {
        trace.steps.push_back(TraceStep::final_answer(text));
        trace.outcome = Outcome::Completed;
        return trace;
      }
      auto revised = parse_numbered_plan(text);
      if (revised.empty()) {
        fail(trace, Outcome::ReplanError, "replanner returned neither a final answer nor a numbered plan");
        return trace;
      }
      if (revised != remaining) {
        TraceStep s;
        s.kind = StepKind::Replan;
        s.text = text;
        trace.steps.push_back(std::move(s));
      }
      plan = std::move(revised);
    }
  } catch (const EndpointError& e) {
    fail(trace, Outcome::EndpointError, e.what());
  } catch (const RecursionLimit&) {
    fail(trace, Outcome::RecursionLimit,
         "iteration limit of " + std::to_string(options.max_iterations) + " reached without a final answer");
  }
  return trace;
}

}  // namespace rca::agent
