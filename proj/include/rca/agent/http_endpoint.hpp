// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <string>

#include <nlohmann/json.hpp>

#include "rca/agent/endpoint.hpp"

namespace rca::agent {

struct HttpEndpointConfig {
  /// "http://host:port" or "https://host".
  std::string base_url;
  std::string path = "/v1/chat/completions";
  std::string model;
  /// Sent as a bearer token when non-empty.
  std::string api_key;
  std::chrono::seconds timeout{120};
};

/// Chat-completions request body for `request`.
nlohmann::json chat_request_to_wire(const ChatRequest& request, const std::string& model);
/// First choice of a chat-completions response. Only the first tool call is
/// kept. Throws EndpointError (non-retryable) on an unexpected shape.
AssistantMessage assistant_from_wire(const nlohmann::json& response);

/// Chat-completions client over HTTP(S). Connection failures, timeouts,
/// 408, 429 and 5xx responses are retryable; other 4xx are not.
class HttpEndpoint : public ModelEndpoint {
 public:
  explicit HttpEndpoint(HttpEndpointConfig config);
  AssistantMessage complete(const ChatRequest& request) override;

 private:
  HttpEndpointConfig config_;
};

}  // namespace rca::agent
