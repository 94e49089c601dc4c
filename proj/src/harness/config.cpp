// SPDX-License-Identifier: Apache-2.0
#include "rca/harness/config.hpp"

#include <algorithm>
#include <fstream>
#include <thread>

#include <fmt/format.h>

#include "rca/common/error.hpp"
#include "rca/common/hash.hpp"

namespace rca::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  if (p.empty()) return {};
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(fmt::format("config key '{}': {}", key, e.what()));
  }
}

EndpointConfig parse_endpoint(const json& j, const fs::path& base) {
  EndpointConfig e;
  if (j.is_null()) return e;
  if (!j.is_object()) throw ValidationError("endpoint config must be an object");
  e.backend = get_or<std::string>(j, "backend", e.backend);
  if (e.backend != "scripted" && e.backend != "http") {
    throw ValidationError("endpoint backend must be 'scripted' or 'http', got '" + e.backend + "'");
  }
  e.script_dir = resolve(base, get_or<std::string>(j, "script_dir", ""));
  e.default_script = resolve(base, get_or<std::string>(j, "default_script", ""));
  e.base_url = get_or<std::string>(j, "base_url", "");
  e.path = get_or<std::string>(j, "path", e.path);
  e.model = get_or<std::string>(j, "model", e.model);
  e.api_key_env = get_or<std::string>(j, "api_key_env", e.api_key_env);
  e.timeout_s = get_or<int>(j, "timeout_s", e.timeout_s);
  e.max_retries = get_or<int>(j, "max_retries", e.max_retries);
  e.concurrency = get_or<int>(j, "concurrency", e.concurrency);
  e.temperature = get_or<double>(j, "temperature", e.temperature);
  if (j.contains("max_tokens") && !j.at("max_tokens").is_null()) e.max_tokens = j.at("max_tokens").get<int>();
  if (e.backend == "http" && e.base_url.empty()) throw ValidationError("http endpoint requires base_url");
  if (e.max_retries < 0) throw ValidationError("endpoint max_retries must be non-negative");
  return e;
}

}  // namespace

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ValidationError("override '" + assignment + "' is not of the form key=value");
  }
  const auto key = assignment.substr(0, eq);
  const auto text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const auto part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ValidationError("override key '" + key + "' has an empty component");
    if (!node->is_object()) *node = json::object();
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

RunConfig parse_config(const json& doc, const fs::path& config_dir) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  const int version = get_or<int>(doc, "version", kConfigVersion);
  if (version != kConfigVersion) throw ValidationError(fmt::format("unsupported config version {}", version));

  RunConfig c;
  c.config_dir = config_dir;
  c.effective = doc;

  const json dataset = doc.value("dataset", json::object());
  c.dataset_name = get_or<std::string>(dataset, "name", c.dataset_name);
  c.lenient = get_or<bool>(dataset, "lenient", false);
  if (dataset.contains("telemetry")) c.telemetry = telemetry::telemetry_sources_from_json(dataset.at("telemetry"), config_dir);
  if (!dataset.contains("scenarios")) throw ValidationError("config lacks dataset.scenarios");
  c.scenarios = telemetry::source_spec_from_json(dataset.at("scenarios"), config_dir);

  const json kg = doc.value("kg", json::object());
  if (!kg.contains("path")) throw ValidationError("config lacks kg.path");
  c.kg_path = resolve(config_dir, kg.at("path").get<std::string>());
  if (kg.contains("schema") && !kg.at("schema").is_null()) {
    c.kg_schema_path = resolve(config_dir, kg.at("schema").get<std::string>());
  }
  c.fault_types = get_or<std::vector<std::string>>(doc, "fault_types", {});

  const json curation = doc.value("curation", json::object());
  c.min_gap_s = get_or<int>(curation, "min_gap_s", c.min_gap_s);
  c.max_gap_min = get_or<int>(curation, "max_gap_min", c.max_gap_min);
  c.baseline_min = get_or<int>(curation, "baseline_min", c.baseline_min);

  const json det = doc.value("detectors", json::object());
  c.log_rare_threshold = get_or<int>(det, "log_rare_threshold", c.log_rare_threshold);
  const json drain = det.value("drain", json::object());
  c.drain.depth = get_or<int>(drain, "depth", c.drain.depth);
  c.drain.sim_threshold = get_or<double>(drain, "similarity", c.drain.sim_threshold);
  c.drain.max_children = get_or<std::size_t>(drain, "max_children", c.drain.max_children);
  const json forest = det.value("iforest", json::object());
  c.iforest.n_trees = get_or<std::size_t>(forest, "n_trees", c.iforest.n_trees);
  c.iforest.subsample = get_or<std::size_t>(forest, "subsample", c.iforest.subsample);
  c.iforest.score_threshold = get_or<double>(forest, "score_threshold", c.iforest.score_threshold);

  c.workflow = agent::parse_workflow(get_or<std::string>(doc, "workflow", "REACT"));
  c.unification = alerts::parse_unification_strategy(get_or<std::string>(doc, "alert_unification", "TIME_BASED"));
  c.kg_representation = kgraph::parse_kg_representation(get_or<std::string>(doc, "kg_representation", "LIST"));
  const auto withhold = get_or<std::string>(doc, "withhold", "");
  if (!withhold.empty() && withhold != "NONE") c.withhold = alerts::parse_modality(withhold);

  c.agent = parse_endpoint(doc.value("agent", json()), config_dir);
  const json judge = doc.value("judge", json());
  c.judge = parse_endpoint(judge, config_dir);
  c.judge_quota = get_or<std::size_t>(judge, "quota", c.judge_quota);
  c.judge_max_attempts = get_or<int>(judge, "max_attempts", c.judge_max_attempts);
  if (c.judge_max_attempts < 1) throw ValidationError("judge.max_attempts must be at least 1");

  c.max_iterations = get_or<int>(doc, "max_iterations", c.max_iterations);
  c.k = get_or<int>(doc, "k", c.k);
  if (c.k != 3) throw ValidationError(fmt::format("k must be 3 (got {})", c.k));
  c.seed = get_or<std::uint64_t>(doc, "seed", c.seed);
  c.iforest.seed = c.seed;
  c.parallelism = get_or<int>(doc, "parallelism", c.parallelism);
  c.max_endpoint_failures = get_or<int>(doc, "max_endpoint_failures", c.max_endpoint_failures);
  c.output_dir = resolve(config_dir, get_or<std::string>(doc, "output_dir", "out"));
  const auto compare = get_or<std::string>(doc, "compare_to", "");
  if (!compare.empty()) c.compare_to = resolve(config_dir, compare);
  return c;
}

RunConfig load_config(const fs::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
  for (const auto& o : overrides) apply_override(doc, o);
  return parse_config(doc, fs::absolute(path).parent_path());
}

std::string config_hash(const RunConfig& config) {
  // The output location does not change what a run computes.
  auto doc = config.effective;
  doc.erase("output_dir");
  return sha256_hex(doc.dump());
}

kgraph::KnowledgeGraph load_graph(const RunConfig& config) {
  std::optional<kgraph::EntitySchema> schema;
  if (config.kg_schema_path) {
    std::ifstream in(*config.kg_schema_path);
    if (!in) throw Error("cannot open KG schema " + config.kg_schema_path->string());
    schema = kgraph::schema_from_json(json::parse(in));
  }
  return kgraph::load_kg(config.kg_path, schema);
}

std::vector<std::string> effective_fault_types(const RunConfig& config, const kgraph::KnowledgeGraph& graph) {
  return config.fault_types.empty() ? graph.schema().all_fault_types() : config.fault_types;
}

std::size_t worker_count(int parallelism, int cap) {
  std::size_t n = parallelism > 0 ? static_cast<std::size_t>(parallelism)
                                  : std::max(1u, std::thread::hardware_concurrency());
  if (cap > 0) n = std::min(n, static_cast<std::size_t>(cap));
  return std::max<std::size_t>(n, 1);
}

}  // namespace rca::harness
