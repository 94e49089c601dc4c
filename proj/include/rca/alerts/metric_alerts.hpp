// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rca/alerts/alert.hpp"
#include "rca/telemetry/records.hpp"

namespace rca::alerts {

struct SeriesStats {
  double mean = 0.0;
  /// Population standard deviation.
  double stddev = 0.0;
  std::size_t count = 0;
};

SeriesStats series_stats(std::span<const double> values);

/// For every (entity, metric) series, mean and population standard deviation
/// come from its baseline points. In-window values strictly above
/// mean + 3 sd alert UP, strictly below mean - 3 sd alert DOWN. Series with
/// fewer than two baseline points or zero deviation are skipped with a
/// notice. Output is chronological.
std::vector<Alert> three_sigma_metric_alerts(const std::vector<telemetry::MetricRecord>& window,
                                             const std::vector<telemetry::MetricRecord>& baseline,
                                             std::vector<std::string>* notices = nullptr);

}  // namespace rca::alerts
