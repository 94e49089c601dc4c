// SPDX-License-Identifier: Apache-2.0
#include "rca/telemetry/records.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "rca/common/error.hpp"

namespace rca::telemetry {

LogLevel parse_log_level(std::string_view text) {
  std::string upper;
  upper.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      upper.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  if (upper == "DEBUG" || upper == "TRACE") return LogLevel::Debug;
  if (upper == "INFO") return LogLevel::Info;
  if (upper == "WARN" || upper == "WARNING") return LogLevel::Warn;
  if (upper == "ERROR" || upper == "ERR" || upper == "FATAL" || upper == "CRITICAL") return LogLevel::Error;
  return LogLevel::Other;
}

std::string_view to_string(LogLevel level) {
  switch (level) {
    case LogLevel::Debug: return "DEBUG";
    case LogLevel::Info: return "INFO";
    case LogLevel::Warn: return "WARN";
    case LogLevel::Error: return "ERROR";
    case LogLevel::Other: break;
  }
  return "OTHER";
}

void validate(const LogRecord& record) {
  if (record.timestamp <= 0) throw ValidationError("log record: timestamp must be > 0");
  if (record.entity.empty()) throw ValidationError("log record: entity must be non-empty");
}

void validate(const MetricRecord& record) {
  if (record.timestamp <= 0) throw ValidationError("metric record: timestamp must be > 0");
  if (record.entity.empty()) throw ValidationError("metric record: entity must be non-empty");
  if (record.metric_name.empty()) throw ValidationError("metric record: metric_name must be non-empty");
  if (!std::isfinite(record.value)) throw ValidationError("metric record: value must be finite");
}

void validate(const TraceSpan& span) {
  if (!(span.duration_ms >= 0.0) || !std::isfinite(span.duration_ms)) {
    throw ValidationError("trace span: duration must be >= 0");
  }
  if (span.caller.empty() || span.callee.empty()) {
    throw ValidationError("trace span: caller and callee must be non-empty");
  }
}

void validate(const FaultScenario& scenario) {
  if (scenario.id.empty()) throw ValidationError("scenario: id must be non-empty");
  if (scenario.window_start >= scenario.window_end) {
    throw ValidationError("scenario " + scenario.id + ": window_start must precede window_end");
  }
}

void sort_by_time(TelemetrySet& set) {
  std::stable_sort(set.logs.begin(), set.logs.end(),
                   [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
  std::stable_sort(set.metrics.begin(), set.metrics.end(),
                   [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
  std::stable_sort(set.spans.begin(), set.spans.end(),
                   [](const auto& a, const auto& b) { return a.start < b.start; });
}

}  // namespace rca::telemetry
