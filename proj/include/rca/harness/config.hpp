// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rca/agent/prompt.hpp"
#include "rca/alerts/alert.hpp"
#include "rca/alerts/drain.hpp"
#include "rca/alerts/isolation_forest.hpp"
#include "rca/alerts/unify.hpp"
#include "rca/kgraph/graph.hpp"
#include "rca/kgraph/render.hpp"
#include "rca/telemetry/loader.hpp"

namespace rca::harness {

inline constexpr int kConfigVersion = 1;

/// A model endpoint. "scripted" replays JSON scripts: `<script_dir>/<id>.json`
/// when present, otherwise `default_script`. "http" talks to an
/// OpenAI-compatible chat completions server; the API key is read from the
/// environment variable named by `api_key_env`.
struct EndpointConfig {
  std::string backend = "scripted";
  std::filesystem::path script_dir;
  std::filesystem::path default_script;
  std::string base_url;
  std::string path = "/v1/chat/completions";
  std::string model = "scripted";
  std::string api_key_env = "RCA_API_KEY";
  int timeout_s = 120;
  int max_retries = 2;
  /// Upper bound on concurrent calls; 0 means no bound.
  int concurrency = 0;
  double temperature = 0.0;
  std::optional<int> max_tokens;
};

struct RunConfig {
  std::filesystem::path config_dir;
  /// Effective configuration after overrides; hashed into the manifest.
  nlohmann::json effective;

  std::string dataset_name = "dataset";
  telemetry::TelemetrySources telemetry;
  telemetry::SourceSpec scenarios;
  bool lenient = false;

  std::filesystem::path kg_path;
  std::optional<std::filesystem::path> kg_schema_path;
  /// Empty: every fault class declared by the KG schema.
  std::vector<std::string> fault_types;

  int min_gap_s = 45;
  int max_gap_min = 30;
  int baseline_min = 15;

  int log_rare_threshold = 2;
  alerts::DrainConfig drain;
  alerts::IsolationForestConfig iforest;

  agent::Workflow workflow = agent::Workflow::React;
  alerts::UnificationStrategy unification = alerts::UnificationStrategy::TimeBased;
  kgraph::KgRepresentation kg_representation = kgraph::KgRepresentation::List;
  std::optional<alerts::Modality> withhold;

  EndpointConfig agent;
  EndpointConfig judge;
  std::size_t judge_quota = 100;
  /// Judge calls per trace before it is marked judge-failed.
  int judge_max_attempts = 3;

  int max_iterations = 50;
  int k = 3;
  std::uint64_t seed = 0;
  /// 0: one worker per hardware thread.
  int parallelism = 0;
  /// Consecutive endpoint failures after which a run stops scheduling work.
  int max_endpoint_failures = 3;
  std::filesystem::path output_dir;
  /// Output directory of a full-modality run to compare against in `score`.
  std::optional<std::filesystem::path> compare_to;
};

/// Applies "a.b.c=value" overrides to a config document. The value is parsed
/// as JSON when possible and taken as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Parses a config document. Relative paths resolve against `config_dir`.
/// Throws ValidationError on unknown enum values, k != 3, or missing keys.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& config_dir);

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

/// SHA-256 of the canonical effective document without output_dir.
std::string config_hash(const RunConfig& config);

/// Loads the KG named by the config, with the separate schema file when one
/// is configured.
kgraph::KnowledgeGraph load_graph(const RunConfig& config);

/// The configured fault types, or every fault class of the graph's schema.
std::vector<std::string> effective_fault_types(const RunConfig& config, const kgraph::KnowledgeGraph& graph);

/// Worker count for `parallelism`, never below 1, bounded by `cap` when
/// positive.
std::size_t worker_count(int parallelism, int cap);

}  // namespace rca::harness
