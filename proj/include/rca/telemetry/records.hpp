// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rca/common/time.hpp"

namespace rca::telemetry {

enum class LogLevel { Debug, Info, Warn, Error, Other };

/// Case-insensitive. WARNING maps to Warn; ERR, FATAL and CRITICAL map to
/// Error; anything unrecognised is Other.
LogLevel parse_log_level(std::string_view text);
std::string_view to_string(LogLevel level);

struct LogRecord {
  EpochMs timestamp = 0;
  std::string entity;
  LogLevel level = LogLevel::Other;
  std::string message;
};

struct MetricRecord {
  EpochMs timestamp = 0;
  std::string entity;
  std::string metric_name;
  double value = 0.0;
};

struct TraceSpan {
  std::string trace_id;
  std::string span_id;
  std::string caller;
  std::string callee;
  EpochMs start = 0;
  double duration_ms = 0.0;
  int status_code = 0;
};

/// One injected fault with its ground truth.
struct FaultScenario {
  std::string id;
  EpochMs window_start = 0;
  EpochMs window_end = 0;
  std::string gt_location;
  std::string gt_fault_type;
  std::string dataset_tag;
};

/// The three raw modalities, each sorted by timestamp (span start for traces).
struct TelemetrySet {
  std::vector<LogRecord> logs;
  std::vector<MetricRecord> metrics;
  std::vector<TraceSpan> spans;

  bool empty() const { return logs.empty() && metrics.empty() && spans.empty(); }
  std::size_t size() const { return logs.size() + metrics.size() + spans.size(); }
};

// Invariant checks; each throws ValidationError describing the violation.
void validate(const LogRecord& record);
void validate(const MetricRecord& record);
void validate(const TraceSpan& span);
void validate(const FaultScenario& scenario);

void sort_by_time(TelemetrySet& set);

}  // namespace rca::telemetry
