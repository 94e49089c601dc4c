// SPDX-License-Identifier: Apache-2.0
#include "rca/agent/trace.hpp"

#include <fstream>
#include <sstream>

#include "rca/common/error.hpp"

namespace rca::agent {

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::Thought:
      return "Thought";
    case StepKind::Action:
      return "Action";
    case StepKind::Observation:
      return "Observation";
    case StepKind::PlanStep:
      return "PlanStep";
    case StepKind::Replan:
      return "Replan";
    case StepKind::FinalAnswer:
      return "FinalAnswer";
  }
  return "?";
}

StepKind parse_step_kind(std::string_view text) {
  for (auto k : {StepKind::Thought, StepKind::Action, StepKind::Observation, StepKind::PlanStep, StepKind::Replan,
                 StepKind::FinalAnswer}) {
    if (to_string(k) == text) return k;
  }
  throw ValidationError("unknown trace step kind '" + std::string(text) + "'");
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Completed:
      return "COMPLETED";
    case Outcome::RecursionLimit:
      return "RECURSION_LIMIT";
    case Outcome::ReplanError:
      return "REPLAN_ERROR";
    case Outcome::ParseFailure:
      return "PARSE_FAILURE";
    case Outcome::EndpointError:
      return "ENDPOINT_ERROR";
  }
  return "?";
}

Outcome parse_outcome(std::string_view text) {
  for (auto o : {Outcome::Completed, Outcome::RecursionLimit, Outcome::ReplanError, Outcome::ParseFailure,
                 Outcome::EndpointError}) {
    if (to_string(o) == text) return o;
  }
  throw ValidationError("unknown outcome '" + std::string(text) + "'");
}

std::string InferenceTrace::final_text() const {
  for (const auto& s : steps) {
    if (s.kind == StepKind::FinalAnswer) return s.text;
  }
  return {};
}

nlohmann::json to_json(const TraceStep& step) {
  nlohmann::json j{{"kind", to_string(step.kind)}};
  switch (step.kind) {
    case StepKind::Action:
      j["tool_call"] = to_json(*step.action);
      break;
    case StepKind::Observation:
      j["ok"] = step.observation->ok;
      j["rendered"] = step.observation->rendered;
      if (step.observation->error_kind) j["error_kind"] = toolbox::to_string(*step.observation->error_kind);
      break;
    case StepKind::PlanStep:
      j["plan_index"] = step.plan_index;
      j["text"] = step.text;
      break;
    default:
      j["text"] = step.text;
  }
  return j;
}

TraceStep trace_step_from_json(const nlohmann::json& j) {
  TraceStep s;
  s.kind = parse_step_kind(j.at("kind").get<std::string>());
  switch (s.kind) {
    case StepKind::Action:
      s.action = tool_invocation_from_json(j.at("tool_call"));
      break;
    case StepKind::Observation: {
      toolbox::ToolResult r;
      r.ok = j.at("ok").get<bool>();
      r.rendered = j.at("rendered").get<std::string>();
      if (j.contains("error_kind")) r.error_kind = toolbox::parse_tool_error_kind(j.at("error_kind").get<std::string>());
      s.observation = std::move(r);
      break;
    }
    case StepKind::PlanStep:
      s.plan_index = j.at("plan_index").get<int>();
      s.text = j.at("text").get<std::string>();
      break;
    default:
      s.text = j.at("text").get<std::string>();
  }
  return s;
}

bool check_alternation(const InferenceTrace& trace) {
  int finals = 0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto k = trace.steps[i].kind;
    if (k == StepKind::Action && (i + 1 >= trace.steps.size() || trace.steps[i + 1].kind != StepKind::Observation)) {
      return false;
    }
    if (k == StepKind::Observation && (i == 0 || trace.steps[i - 1].kind != StepKind::Action)) return false;
    if (k == StepKind::FinalAnswer) ++finals;
  }
  return finals <= 1;
}

std::string trace_to_jsonl(const nlohmann::json& header, const InferenceTrace& trace, const nlohmann::json& end) {
  std::string out;
  nlohmann::json h{{"record", "header"}};
  if (header.is_object()) h.update(header);
  out += h.dump() + '\n';
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    nlohmann::json s{{"record", "step"}, {"index", i}};
    s.update(to_json(trace.steps[i]));
    out += s.dump() + '\n';
  }
  nlohmann::json e{{"record", "end"},
                   {"outcome", to_string(trace.outcome)},
                   {"iterations", trace.iterations},
                   {"endpoint_calls", trace.endpoint_calls},
                   {"tool_calls", trace.tool_calls},
                   {"retries", trace.retries},
                   {"error", trace.error}};
  if (end.is_object()) e.update(end);
  out += e.dump() + '\n';
  return out;
}

StoredTrace parse_trace_jsonl(std::string_view text, const std::string& source) {
  StoredTrace st;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      const auto record = j.at("record").get<std::string>();
      if (record == "header") {
        j.erase("record");
        st.header = std::move(j);
      } else if (record == "step") {
        st.trace.steps.push_back(trace_step_from_json(j));
      } else if (record == "end") {
        st.trace.outcome = parse_outcome(j.at("outcome").get<std::string>());
        st.trace.iterations = j.value("iterations", 0);
        st.trace.endpoint_calls = j.value("endpoint_calls", 0);
        st.trace.tool_calls = j.value("tool_calls", 0);
        st.trace.retries = j.value("retries", 0);
        st.trace.error = j.value("error", std::string());
        for (const char* k : {"record", "outcome", "iterations", "endpoint_calls", "tool_calls", "retries", "error"}) {
          j.erase(k);
        }
        st.end = std::move(j);
        st.complete = true;
      } else {
        throw ParseError(source, n, "unknown record type '" + record + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(source, n, e.what());
    } catch (const ValidationError& e) {
      throw ParseError(source, n, e.what());
    }
  }
  return st;
}

StoredTrace read_trace_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open trace " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_trace_jsonl(ss.str(), path.string());
}

}  // namespace rca::agent
