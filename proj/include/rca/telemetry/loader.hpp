// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rca/telemetry/records.hpp"

namespace rca::telemetry {

enum class ParseMode { Strict, Lenient };

enum class TimeUnit { Seconds, Milliseconds, Microseconds };

/// One delimited file and how its header columns map onto record fields.
/// Fields absent from `columns` are looked up under their own name.
struct SourceSpec {
  std::filesystem::path path;
  char delimiter = ',';
  TimeUnit time_unit = TimeUnit::Milliseconds;
  std::map<std::string, std::string> columns;

  std::string column_for(const std::string& field) const;
};

struct TelemetrySources {
  std::optional<SourceSpec> logs;
  std::optional<SourceSpec> metrics;
  std::optional<SourceSpec> traces;
};

/// A row that was skipped in lenient mode.
struct RecordIssue {
  std::string source;
  std::size_t line = 0;
  std::string message;
};

struct LoadResult {
  TelemetrySet telemetry;
  std::vector<RecordIssue> issues;
};

/// Parses every configured modality. In strict mode the first bad row throws
/// ParseError (file and line in the message); in lenient mode it is skipped
/// and reported. A missing required column always throws.
LoadResult load_telemetry(const TelemetrySources& sources, ParseMode mode);

struct ScenarioLoad {
  std::vector<FaultScenario> scenarios;
  std::vector<RecordIssue> issues;
};

/// Ground-truth file: one row per fault (id, window_start, window_end,
/// location, fault_type, optional dataset). Sorted by window_start then id.
ScenarioLoad load_scenarios(const SourceSpec& spec, ParseMode mode);

/// Reads a `{"path", "delimiter", "timestamp_unit", "columns"}` object.
/// Relative paths resolve against `base_dir`.
SourceSpec source_spec_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

/// Reads `{"logs": {...}, "metrics": {...}, "traces": {...}}`; any key may be
/// absent.
TelemetrySources telemetry_sources_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);

}  // namespace rca::telemetry
