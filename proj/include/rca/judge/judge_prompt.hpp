// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "rca/agent/messages.hpp"
#include "rca/agent/trace.hpp"

namespace rca::judge {

/// Fixed judge system message.
const std::string& judge_system_message();
/// Taxonomy, annotation guide, workflow and output schema.
const std::string& judge_instructions();

/// Renders the agent's task prompt and inference trace as a chat transcript
/// with "=== Human Message ===", "=== AI Message ===" and
/// "=== Tool Message ===" headers.
std::string render_chat_history(const std::vector<agent::ChatMessage>& task_prompt,
                                const agent::InferenceTrace& trace);

struct JudgeInputs {
  std::vector<agent::ChatMessage> task_prompt;
  agent::InferenceTrace trace;
  /// Structured final response (the parsed hypotheses), rendered as text.
  std::string structured_response;
  std::string gt_location;
  std::string gt_fault_type;
};

/// System and user messages for one judge call. Throws ValidationError when
/// the task prompt carries no user message (a trace without its prompt
/// cannot be judged).
std::vector<agent::ChatMessage> build_judge_prompt(const JudgeInputs& inputs);

}  // namespace rca::judge
