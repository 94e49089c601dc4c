// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rca/telemetry/records.hpp"

namespace rca::harness {

/// Layout of one run directory:
///   alerts/<scenario>.jsonl      extracted alerts
///   extraction_report.json       curation counts and per-scenario alert counts
///   scenarios.json               curated scenarios with ground truth
///   kg/                          build-kg renderings
///   traces/<scenario>.jsonl      inference traces
///   manifest.json                run outcomes, config hash, timing
///   scores/                      correctness.jsonl, scores.csv, scores.md, holdout.csv
///   judge/                       annotations.jsonl, failures.json, prevalence.csv, risk.csv
///   report.md
class Store {
 public:
  explicit Store(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path alerts_dir() const { return root_ / "alerts"; }
  std::filesystem::path alerts_file(std::string_view scenario_id) const;
  std::filesystem::path extraction_report() const { return root_ / "extraction_report.json"; }
  std::filesystem::path scenarios_file() const { return root_ / "scenarios.json"; }
  std::filesystem::path kg_dir() const { return root_ / "kg"; }
  std::filesystem::path traces_dir() const { return root_ / "traces"; }
  std::filesystem::path trace_file(std::string_view scenario_id) const;
  std::filesystem::path manifest() const { return root_ / "manifest.json"; }
  std::filesystem::path scores_dir() const { return root_ / "scores"; }
  std::filesystem::path judge_dir() const { return root_ / "judge"; }
  std::filesystem::path report() const { return root_ / "report.md"; }

 private:
  std::filesystem::path root_;
};

/// Writes through a temporary file and renames, so readers never see a
/// partial file. Creates parent directories.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);
nlohmann::json read_json(const std::filesystem::path& path);
/// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

nlohmann::json to_json(const telemetry::FaultScenario& s);
telemetry::FaultScenario scenario_from_json(const nlohmann::json& j);
void write_scenarios(const Store& store, const std::vector<telemetry::FaultScenario>& scenarios);
/// Throws Error when the extract stage has not run.
std::vector<telemetry::FaultScenario> read_scenarios(const Store& store);

/// Scenario ids are used as file names; anything outside [A-Za-z0-9._-] is
/// rejected.
void check_scenario_id(std::string_view id);

}  // namespace rca::harness
