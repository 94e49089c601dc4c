// SPDX-License-Identifier: Apache-2.0
#include "rca/agent/endpoint.hpp"

#include <fstream>
#include <thread>

#include <spdlog/spdlog.h>

namespace rca::agent {

ScriptedEndpoint::ScriptedEndpoint(std::vector<ScriptEntry> script) : script_(std::move(script)) {
  if (script_.empty()) throw ValidationError("scripted endpoint needs at least one entry");
}

std::vector<ScriptEntry> ScriptedEndpoint::parse_script(const nlohmann::json& j) {
  if (!j.is_array()) throw ValidationError("endpoint script must be a JSON array");
  std::vector<ScriptEntry> out;
  for (const auto& e : j) {
    if (e.contains("error")) {
      out.emplace_back(InjectedFault{e.at("error").get<std::string>(), e.value("retryable", true)});
    } else {
      out.emplace_back(assistant_message_from_json(e));
    }
  }
  return out;
}

std::vector<ScriptEntry> ScriptedEndpoint::load_script(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open endpoint script " + path.string());
  try {
    return parse_script(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

AssistantMessage ScriptedEndpoint::complete(const ChatRequest& request) {
  std::lock_guard lock(mutex_);
  requests_.push_back(request);
  if (next_ >= script_.size()) {
    ++next_;
    throw EndpointError("scripted endpoint exhausted after " + std::to_string(script_.size()) + " responses", false);
  }
  const auto& entry = script_[next_++];
  if (const auto* fault = std::get_if<InjectedFault>(&entry)) {
    throw EndpointError("injected fault: " + fault->kind, fault->retryable);
  }
  return std::get<AssistantMessage>(entry);
}

std::size_t ScriptedEndpoint::calls() const {
  std::lock_guard lock(mutex_);
  return next_;
}

std::vector<ChatRequest> ScriptedEndpoint::requests() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

AssistantMessage RepeatingEndpoint::complete(const ChatRequest&) {
  std::lock_guard lock(mutex_);
  ++calls_;
  return response_;
}

std::size_t RepeatingEndpoint::calls() const {
  std::lock_guard lock(mutex_);
  return calls_;
}

AssistantMessage complete_with_retry(ModelEndpoint& endpoint, const ChatRequest& request, const RetryPolicy& policy,
                                     int& retries) {
  for (int attempt = 0;; ++attempt) {
    try {
      return endpoint.complete(request);
    } catch (const EndpointError& e) {
      if (!e.retryable() || attempt >= policy.max_retries) throw;
      spdlog::warn("endpoint call failed ({}), retry {}/{}", e.what(), attempt + 1, policy.max_retries);
      ++retries;
      if (policy.backoff.count() > 0) std::this_thread::sleep_for(policy.backoff * (attempt + 1));
    }
  }
}

}  // namespace rca::agent
