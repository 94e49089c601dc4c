// SPDX-License-Identifier: Apache-2.0
#include "rca/agent/http_endpoint.hpp"

#include <httplib.h>

namespace rca::agent {

nlohmann::json chat_request_to_wire(const ChatRequest& request, const std::string& model) {
  nlohmann::json messages = nlohmann::json::array();
  for (const auto& m : request.messages) {
    nlohmann::json w{{"role", to_string(m.role)}, {"content", m.content}};
    if (m.tool_call) {
      w["tool_calls"] = nlohmann::json::array(
          {{{"id", m.tool_call->id},
            {"type", "function"},
            {"function", {{"name", m.tool_call->name}, {"arguments", m.tool_call->arguments}}}}});
    }
    if (m.role == Role::Tool) w["tool_call_id"] = m.tool_call_id;
    messages.push_back(std::move(w));
  }
  nlohmann::json body{{"model", model}, {"messages", messages}, {"temperature", request.settings.temperature}};
  if (request.settings.max_tokens) body["max_tokens"] = *request.settings.max_tokens;
  if (request.settings.seed) body["seed"] = *request.settings.seed;
  if (!request.tools.empty()) body["tools"] = request.tools;
  return body;
}

AssistantMessage assistant_from_wire(const nlohmann::json& response) {
  try {
    const auto& message = response.at("choices").at(0).at("message");
    AssistantMessage out;
    if (message.contains("content") && message.at("content").is_string()) {
      out.content = message.at("content").get<std::string>();
    }
    if (message.contains("tool_calls") && message.at("tool_calls").is_array() && !message.at("tool_calls").empty()) {
      const auto& call = message.at("tool_calls").at(0);
      ToolInvocation inv;
      inv.id = call.value("id", std::string());
      const auto& fn = call.at("function");
      inv.name = fn.at("name").get<std::string>();
      const auto& args = fn.contains("arguments") ? fn.at("arguments") : nlohmann::json::object();
      inv.arguments = args.is_string() ? args.get<std::string>() : args.dump();
      out.tool_call = std::move(inv);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw EndpointError(std::string("unexpected chat-completions response: ") + e.what(), false);
  }
}

HttpEndpoint::HttpEndpoint(HttpEndpointConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) throw ValidationError("HTTP endpoint needs a base URL");
}

AssistantMessage HttpEndpoint::complete(const ChatRequest& request) {
  // One client per call keeps concurrent callers independent.
  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  if (!config_.api_key.empty()) client.set_bearer_token_auth(config_.api_key);

  const auto body = chat_request_to_wire(request, config_.model).dump();
  auto res = client.Post(config_.path, body, "application/json");
  if (!res) {
    throw EndpointError("request to " + config_.base_url + " failed: " + httplib::to_string(res.error()), true);
  }
  if (res->status != 200) {
    const bool retryable = res->status == 408 || res->status == 429 || res->status >= 500;
    throw EndpointError("endpoint returned HTTP " + std::to_string(res->status), retryable);
  }
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw EndpointError(std::string("endpoint returned malformed JSON: ") + e.what(), false);
  }
  return assistant_from_wire(parsed);
}

}  // namespace rca::agent
