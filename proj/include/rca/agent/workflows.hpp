// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rca/agent/endpoint.hpp"
#include "rca/agent/prompt.hpp"
#include "rca/agent/trace.hpp"
#include "rca/toolbox/tools.hpp"

namespace rca::agent {

inline constexpr int kDefaultMaxIterations = 50;

struct WorkflowOptions {
  /// Cap on endpoint round-trips plus tool dispatches.
  int max_iterations = kDefaultMaxIterations;
  RetryPolicy retry;
  GenerationSettings settings;
};

/// Splits leading <think>...</think> blocks from the rest of a response.
/// Returns {think text, remainder}; think text is empty without such a block.
std::pair<std::string, std::string> split_think(std::string_view text);

/// Numbered-list lines ("1. step", "2) step"), in order. Other lines are
/// ignored. Empty when no numbered line exists.
std::vector<std::string> parse_numbered_plan(std::string_view text);

/// One endpoint call without tools. Think text becomes a Thought, the rest
/// the FinalAnswer.
InferenceTrace run_straight_shot(ModelEndpoint& endpoint, const std::vector<ChatMessage>& prompt,
                                 const WorkflowOptions& options = {});

/// Thought/Action/Observation loop. A response without a tool call ends the
/// run as its FinalAnswer. Malformed invocations get an error Observation
/// and the loop continues.
InferenceTrace run_react(ModelEndpoint& endpoint, const std::vector<ChatMessage>& prompt, toolbox::Toolbox& tools,
                         const WorkflowOptions& options = {});

/// Planner call, then per step an executor tool loop and a replanner call.
/// The replanner either answers ("Final Answer:") or returns the remaining
/// steps as a numbered list; a list that differs from the current remainder
/// is recorded as a Replan. Empty or unparseable plans end the run with
/// REPLAN_ERROR.
InferenceTrace run_plan_and_execute(ModelEndpoint& endpoint, const PromptInputs& inputs, toolbox::Toolbox& tools,
                                    const WorkflowOptions& options = {});

}  // namespace rca::agent
