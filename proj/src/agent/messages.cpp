// SPDX-License-Identifier: Apache-2.0
#include "rca/agent/messages.hpp"

#include "rca/common/error.hpp"

namespace rca::agent {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::System:
      return "system";
    case Role::User:
      return "user";
    case Role::Assistant:
      return "assistant";
    case Role::Tool:
      return "tool";
  }
  return "?";
}

Role parse_role(std::string_view text) {
  for (auto r : {Role::System, Role::User, Role::Assistant, Role::Tool}) {
    if (to_string(r) == text) return r;
  }
  throw ValidationError("unknown message role '" + std::string(text) + "'");
}

nlohmann::json to_json(const ToolInvocation& call) {
  return {{"id", call.id}, {"name", call.name}, {"arguments", call.arguments}};
}

ToolInvocation tool_invocation_from_json(const nlohmann::json& j) {
  ToolInvocation call;
  call.id = j.value("id", std::string());
  call.name = j.at("name").get<std::string>();
  const auto& args = j.contains("arguments") ? j.at("arguments") : nlohmann::json::object();
  call.arguments = args.is_string() ? args.get<std::string>() : args.dump();
  return call;
}

nlohmann::json to_json(const ChatMessage& message) {
  nlohmann::json j{{"role", to_string(message.role)}, {"content", message.content}};
  if (message.tool_call) j["tool_call"] = to_json(*message.tool_call);
  if (!message.tool_call_id.empty()) j["tool_call_id"] = message.tool_call_id;
  return j;
}

ChatMessage chat_message_from_json(const nlohmann::json& j) {
  ChatMessage m;
  m.role = parse_role(j.at("role").get<std::string>());
  m.content = j.value("content", std::string());
  if (j.contains("tool_call")) m.tool_call = tool_invocation_from_json(j.at("tool_call"));
  m.tool_call_id = j.value("tool_call_id", std::string());
  return m;
}

nlohmann::json to_json(const AssistantMessage& message) {
  nlohmann::json j{{"content", message.content}};
  if (message.tool_call) j["tool_call"] = to_json(*message.tool_call);
  return j;
}

AssistantMessage assistant_message_from_json(const nlohmann::json& j) {
  AssistantMessage m;
  if (j.contains("content") && !j.at("content").is_null()) m.content = j.at("content").get<std::string>();
  if (j.contains("tool_call") && !j.at("tool_call").is_null()) m.tool_call = tool_invocation_from_json(j.at("tool_call"));
  return m;
}

}  // namespace rca::agent
