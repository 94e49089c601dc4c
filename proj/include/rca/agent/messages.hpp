// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace rca::agent {

enum class Role { System, User, Assistant, Tool };

std::string_view to_string(Role role);
Role parse_role(std::string_view text);

/// A tool invocation as emitted by the model. `arguments` is the raw JSON
/// text, kept verbatim so malformed invocations can be recorded.
struct ToolInvocation {
  std::string id;
  std::string name;
  std::string arguments;

  bool operator==(const ToolInvocation&) const = default;
};

struct ChatMessage {
  Role role = Role::User;
  std::string content;
  /// Assistant messages only.
  std::optional<ToolInvocation> tool_call;
  /// Tool messages only: id of the invocation being answered.
  std::string tool_call_id;

  static ChatMessage system(std::string text) { return {Role::System, std::move(text), std::nullopt, {}}; }
  static ChatMessage user(std::string text) { return {Role::User, std::move(text), std::nullopt, {}}; }

  bool operator==(const ChatMessage&) const = default;
};

struct GenerationSettings {
  double temperature = 0.0;
  std::optional<int> max_tokens;
  std::optional<std::int64_t> seed;

  bool operator==(const GenerationSettings&) const = default;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  /// Tool declarations; an empty array disables tool use.
  nlohmann::json tools = nlohmann::json::array();
  GenerationSettings settings;
};

/// One model turn: text, a tool invocation, or both.
struct AssistantMessage {
  std::string content;
  std::optional<ToolInvocation> tool_call;

  bool operator==(const AssistantMessage&) const = default;
};

nlohmann::json to_json(const ToolInvocation& call);
ToolInvocation tool_invocation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ChatMessage& message);
ChatMessage chat_message_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AssistantMessage& message);
/// Accepts {"content": "...", "tool_call": {"id","name","arguments"}}, where
/// arguments may be a JSON object (serialized compactly) or a string.
AssistantMessage assistant_message_from_json(const nlohmann::json& j);

}  // namespace rca::agent
