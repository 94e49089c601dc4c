// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "rca/alerts/alert.hpp"
#include "rca/alerts/drain.hpp"
#include "rca/telemetry/records.hpp"

namespace rca::alerts {

struct LogAlertConfig {
  /// Templates occurring at most this many times in the window are rare.
  std::size_t rare_threshold = 2;
};

/// Every ERROR-level log and every occurrence of a rare template becomes an
/// alert; other templates contribute their first occurrence per entity.
/// `parsed` must come from drain_parse(logs). Output is chronological.
std::vector<Alert> sample_log_alerts(const std::vector<telemetry::LogRecord>& logs, const DrainResult& parsed,
                                     const LogAlertConfig& config = {});

}  // namespace rca::alerts
