// SPDX-License-Identifier: Apache-2.0
#include "rca/agent/prompt.hpp"

#include <algorithm>
#include <cctype>

#include "rca/common/error.hpp"

namespace rca::agent {
namespace {

constexpr std::string_view kSystem =
    "You are a helpful assistant that is an expert in root cause analysis for complex cloud-based software systems.";

constexpr std::string_view kSystemContext =
    "Consider a cloud-based software system composed of multiple interconnected components (both software and "
    "hardware). This system can be represented by an explicit, directed, unweighted, and typed knowledge graph, "
    "where nodes represent system components and edges indicate relationships between them. The schema of the "
    "knowledge graph is as follows.\n\n";

constexpr std::string_view kPropagation =
    "Errors or issues originating in one component may propagate to others due to dependencies, communication "
    "links, or shared resources. These errors often manifest as observable symptoms (e.g., anomalies or alerts) in "
    "different system components.\n\n";

constexpr std::string_view kTask =
    "### Task\n"
    "You will be given a set of symptoms (e.g., log, trace and/or metric alerts) due to a fault that occurred in the "
    "system.\n"
    "Your task is to use the system knowledge graph and the detected symptoms to hypothesize the three most likely "
    "root cause faults that could be the underlying cause of the observed symptoms.\n"
    "Each root cause fault is localized to a single system component, included as a node in the knowledge graph. You "
    "must identify this node as the root cause location.\n\n";

constexpr std::string_view kReactInstructions =
    "### Instructions:\n"
    "You should think step-by-step in order to fulfill the objective. The step-by-step workflow should follow a "
    "\"Thought/Action/Observation\" loop that can repeat multiple times if needed. Here is how you should go about "
    "it:\n"
    "1. Thought: reflect internally on the current task, the available information, and what to do next.\n"
    "2. Action: if further information is needed, choose one appropriate tool to call. Any and all \"Thoughts\" must "
    "be included in the 'reasoning' field in the tool input.\n"
    "3. Observation: The tool will return a result, which will be provided to you.\n"
    "Repeat this loop as needed until you have enough information to answer the original task.\n"
    "When ready, output your final answer starting with the prefix 'Final Answer:'.\n\n";

constexpr std::string_view kStraightShotInstructions =
    "### Instructions:\n"
    "You should think step-by-step in order to fulfill the objective, using only the knowledge graph and the "
    "symptoms given below. No tools are available.\n"
    "When ready, output your final answer starting with the prefix 'Final Answer:'.\n\n";

constexpr std::string_view kPlannerInstructions =
    "### Instructions:\n"
    "Do not answer yet. First devise a step-by-step investigation plan that, once carried out with the available "
    "tools, gathers the information needed to answer the task. Each step should be a single, concrete investigation "
    "action.\n"
    "Output only the plan as a numbered list, one step per line (\"1. ...\", \"2. ...\").\n"
    "The steps will be executed one at a time; after each step you may revise the remaining plan. When the plan is "
    "complete, the final answer must start with the prefix 'Final Answer:' and follow the format below.\n\n";

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += items[i];
  }
  return out;
}

std::string schema_block(const PromptInputs& in) {
  std::string out;
  out += "### Knowledge graph schema\n";
  out += "#### Entities\n";
  out += in.entity_schema;
  if (!in.entity_schema.ends_with('\n')) out += '\n';
  out += "#### Relationships\n";
  out += in.relationship_schema;
  if (!in.relationship_schema.ends_with('\n')) out += '\n';
  out += '\n';
  return out;
}

std::string answer_format(const PromptInputs& in) {
  std::string out;
  out += "Your 'Final Answer' should consist of three likely root cause faults.\n";
  out += "For each root cause fault, provide:\n";
  out += "- **Type**: the type of root cause fault. Please restrict your analysis to the following types of root "
         "cause faults: " +
         join(in.fault_types) + ".\n";
  out += "- **Description**: an explanation of what the root cause fault looks like in the system.\n";
  out += "- **Location**: the single exact node at which the root cause fault occurs. This node should have the "
         "following entity type: " +
         join(in.fault_entity_types) + ".\n";
  out += "- **Justification**: a step-by-step reasoning based on the given alerts and information from the knowledge "
         "graph that explains how the symptoms could occur due to the root cause.\n";
  out += "- **Propagation path**: the specific propagation path in the knowledge graph that would make the root cause "
         "possible, formatted as `node1 --(edge_label1)--> node2 --(edge_label2)--> node3`.\n\n";
  out += "You should rank the three root cause faults in order of most likely to least likely.\n\n";
  return out;
}

std::string symptoms_block(const PromptInputs& in) {
  std::string out;
  out += "### Observed symptoms\n";
  out += "The following symptoms/alerts were detected by an anomaly detector:\n";
  out += in.alerts_text;
  if (!in.alerts_text.ends_with('\n')) out += '\n';
  out += "Think step by step and ensure your reasoning is traceable through the knowledge graph.\n";
  return out;
}

std::string context_block(const PromptInputs& in) {
  return std::string(kSystemContext) + schema_block(in) + std::string(kPropagation) + std::string(kTask);
}

void require_alerts(const PromptInputs& in) {
  if (in.alerts_text.empty()) throw ValidationError("prompt requires an alert block");
}

}  // namespace

std::string to_string(Workflow w) {
  switch (w) {
    case Workflow::StraightShot:
      return "STRAIGHT_SHOT";
    case Workflow::React:
      return "REACT";
    case Workflow::PlanExecute:
      return "PLAN_EXECUTE";
  }
  return "?";
}

Workflow parse_workflow(std::string_view text) {
  std::string u(text);
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
  std::replace(u.begin(), u.end(), '-', '_');
  if (u == "STRAIGHT_SHOT") return Workflow::StraightShot;
  if (u == "REACT") return Workflow::React;
  if (u == "PLAN_EXECUTE" || u == "PLAN_AND_EXECUTE") return Workflow::PlanExecute;
  throw ValidationError("unknown workflow '" + std::string(text) + "'");
}

std::vector<ChatMessage> build_prompt(Workflow workflow, const PromptInputs& in) {
  require_alerts(in);
  std::string user = context_block(in);
  switch (workflow) {
    case Workflow::StraightShot:
      if (in.kg_text.empty()) throw ValidationError("straight-shot prompt requires the full knowledge graph text");
      user += "### Knowledge graph\n";
      user += in.kg_text;
      if (!in.kg_text.ends_with('\n')) user += '\n';
      user += '\n';
      user += kStraightShotInstructions;
      break;
    case Workflow::React:
      user += kReactInstructions;
      break;
    case Workflow::PlanExecute:
      user += kPlannerInstructions;
      break;
  }
  user += answer_format(in);
  user += symptoms_block(in);
  return {ChatMessage::system(std::string(kSystem)), ChatMessage::user(std::move(user))};
}

std::vector<ChatMessage> build_executor_prompt(const PromptInputs& in, const std::vector<std::string>& plan,
                                               std::size_t step_index) {
  require_alerts(in);
  std::string user = context_block(in);
  user += symptoms_block(in);
  user += "\n### Investigation plan\n";
  for (std::size_t i = 0; i < plan.size(); ++i) user += std::to_string(i + 1) + ". " + plan[i] + '\n';
  user += "\n### Current step\n";
  user += "You are executing step " + std::to_string(step_index + 1) + ": " + plan.at(step_index) + '\n';
  user += "Use the available tools as needed; every tool call must include your reasoning in the 'reasoning' field. "
          "When the step is done, reply without a tool call with a concise summary of what you found. Do not give "
          "the final answer.\n";
  return {ChatMessage::system(std::string(kSystem)), ChatMessage::user(std::move(user))};
}

std::vector<ChatMessage> build_replanner_prompt(const PromptInputs& in, const std::vector<std::string>& original_plan,
                                                const std::vector<CompletedStep>& done) {
  require_alerts(in);
  std::string user = context_block(in);
  user += symptoms_block(in);
  user += "\n### Original plan\n";
  for (std::size_t i = 0; i < original_plan.size(); ++i) {
    user += std::to_string(i + 1) + ". " + original_plan[i] + '\n';
  }
  user += "\n### Completed steps\n";
  for (std::size_t i = 0; i < done.size(); ++i) {
    user += "Step " + std::to_string(i + 1) + ": " + done[i].step + '\n';
    user += "Result: " + done[i].result + '\n';
  }
  user += "\n### Instructions:\n";
  user += "If you have enough information, output your final answer starting with the prefix 'Final Answer:' in the "
          "format below. Otherwise output only the remaining steps as a numbered list, one step per line; do not "
          "repeat completed steps.\n\n";
  user += answer_format(in);
  return {ChatMessage::system(std::string(kSystem)), ChatMessage::user(std::move(user))};
}

}  // namespace rca::agent
