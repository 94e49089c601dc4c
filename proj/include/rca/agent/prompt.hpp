// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rca/agent/messages.hpp"

namespace rca::agent {

enum class Workflow { StraightShot, React, PlanExecute };

std::string to_string(Workflow w);
/// Accepts STRAIGHT_SHOT / REACT / PLAN_EXECUTE (case-insensitive).
Workflow parse_workflow(std::string_view text);

inline constexpr std::string_view kFinalAnswerPrefix = "Final Answer:";

struct PromptInputs {
  std::string entity_schema;
  std::string relationship_schema;
  /// Unified alert rendering.
  std::string alerts_text;
  std::vector<std::string> fault_types;
  std::vector<std::string> fault_entity_types;
  /// Full KG rendering; required for STRAIGHT_SHOT, ignored otherwise.
  std::string kg_text;
};

/// System + user message opening a run. For PLAN_EXECUTE this is the
/// planner prompt. Throws ValidationError when the alert block is empty, or
/// when STRAIGHT_SHOT lacks the KG text.
std::vector<ChatMessage> build_prompt(Workflow workflow, const PromptInputs& inputs);

/// Plan-and-Execute executor prompt for one plan step.
std::vector<ChatMessage> build_executor_prompt(const PromptInputs& inputs, const std::vector<std::string>& plan,
                                               std::size_t step_index);

struct CompletedStep {
  std::string step;
  std::string result;
};

/// Plan-and-Execute replanner prompt: the original plan, the steps done so
/// far with their results, and the request to either finish or revise.
std::vector<ChatMessage> build_replanner_prompt(const PromptInputs& inputs, const std::vector<std::string>& original_plan,
                                                const std::vector<CompletedStep>& done);

}  // namespace rca::agent
