// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "rca/agent/messages.hpp"
#include "rca/common/error.hpp"

namespace rca::agent {

class EndpointError : public Error {
 public:
  EndpointError(const std::string& message, bool retryable) : Error(message), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

/// A chat model. Implementations must allow concurrent calls.
class ModelEndpoint {
 public:
  virtual ~ModelEndpoint() = default;
  /// Throws EndpointError on failure.
  virtual AssistantMessage complete(const ChatRequest& request) = 0;
};

/// A failure injected into a script in place of a response.
struct InjectedFault {
  std::string kind;  // e.g. "timeout"
  bool retryable = true;

  bool operator==(const InjectedFault&) const = default;
};

using ScriptEntry = std::variant<AssistantMessage, InjectedFault>;

/// Replays canned responses in order. Each call consumes one entry; a fault
/// entry throws EndpointError. Calling past the end throws a non-retryable
/// EndpointError.
class ScriptedEndpoint : public ModelEndpoint {
 public:
  explicit ScriptedEndpoint(std::vector<ScriptEntry> script);

  /// JSON array; each element is an assistant message object or
  /// {"error": "<kind>", "retryable": bool}.
  static std::vector<ScriptEntry> parse_script(const nlohmann::json& j);
  static std::vector<ScriptEntry> load_script(const std::filesystem::path& path);

  AssistantMessage complete(const ChatRequest& request) override;

  std::size_t calls() const;
  /// Requests received so far, in order.
  std::vector<ChatRequest> requests() const;

 private:
  std::vector<ScriptEntry> script_;
  std::size_t next_ = 0;
  std::vector<ChatRequest> requests_;
  mutable std::mutex mutex_;
};

/// Same response for every call; useful for adversarial always-tool scripts.
class RepeatingEndpoint : public ModelEndpoint {
 public:
  explicit RepeatingEndpoint(AssistantMessage response) : response_(std::move(response)) {}
  AssistantMessage complete(const ChatRequest& request) override;
  std::size_t calls() const;

 private:
  AssistantMessage response_;
  std::size_t calls_ = 0;
  mutable std::mutex mutex_;
};

struct RetryPolicy {
  /// Additional attempts after the first for retryable failures.
  int max_retries = 2;
  std::chrono::milliseconds backoff{0};
};

/// Calls `endpoint`, retrying retryable failures. Adds the number of retries
/// performed to `retries`. Rethrows the last error once retries run out.
AssistantMessage complete_with_retry(ModelEndpoint& endpoint, const ChatRequest& request, const RetryPolicy& policy,
                                     int& retries);

}  // namespace rca::agent
