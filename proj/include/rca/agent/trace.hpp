// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rca/agent/messages.hpp"
#include "rca/toolbox/tools.hpp"

namespace rca::agent {

enum class StepKind { Thought, Action, Observation, PlanStep, Replan, FinalAnswer };
enum class Outcome { Completed, RecursionLimit, ReplanError, ParseFailure, EndpointError };

std::string_view to_string(StepKind kind);
StepKind parse_step_kind(std::string_view text);
std::string_view to_string(Outcome outcome);
Outcome parse_outcome(std::string_view text);
/// True for every outcome other than COMPLETED.
inline bool is_execution_error(Outcome o) { return o != Outcome::Completed; }

struct TraceStep {
  StepKind kind = StepKind::Thought;
  /// Thought / PlanStep / Replan / FinalAnswer text.
  std::string text;
  /// PlanStep: 1-based position in the plan.
  int plan_index = 0;
  /// Action: the invocation exactly as the model produced it.
  std::optional<ToolInvocation> action;
  /// Observation: the tool result.
  std::optional<toolbox::ToolResult> observation;

  static TraceStep thought(std::string t) { return {StepKind::Thought, std::move(t), 0, std::nullopt, std::nullopt}; }
  static TraceStep final_answer(std::string t) {
    return {StepKind::FinalAnswer, std::move(t), 0, std::nullopt, std::nullopt};
  }

  bool operator==(const TraceStep&) const = default;
};

struct InferenceTrace {
  std::vector<TraceStep> steps;
  Outcome outcome = Outcome::Completed;
  /// Endpoint round-trips plus tool dispatches.
  int iterations = 0;
  int endpoint_calls = 0;
  int tool_calls = 0;
  /// Retried endpoint failures.
  int retries = 0;
  /// Set for error outcomes.
  std::string error;

  /// Text of the FinalAnswer step, empty if none.
  std::string final_text() const;
  bool operator==(const InferenceTrace&) const = default;
};

nlohmann::json to_json(const TraceStep& step);
TraceStep trace_step_from_json(const nlohmann::json& j);

/// Linear scan: every Action is immediately followed by an Observation and
/// every Observation immediately preceded by an Action. At most one
/// FinalAnswer.
bool check_alternation(const InferenceTrace& trace);

/// JSON-lines trace file:
///   {"record":"header", ...header}
///   {"record":"step","index":0,"kind":"Thought",...}   one per step
///   {"record":"end","outcome":"COMPLETED","iterations":..,"endpoint_calls":..,
///    "tool_calls":..,"retries":..,"error":"", ...end}
/// The file is complete once the end record is present.
std::string trace_to_jsonl(const nlohmann::json& header, const InferenceTrace& trace, const nlohmann::json& end);

struct StoredTrace {
  nlohmann::json header;
  InferenceTrace trace;
  nlohmann::json end;
  bool complete = false;
};

/// Throws ParseError on malformed lines. A missing end record yields
/// complete = false.
StoredTrace read_trace_jsonl(const std::filesystem::path& path);
StoredTrace parse_trace_jsonl(std::string_view text, const std::string& source = "<trace>");

}  // namespace rca::agent
