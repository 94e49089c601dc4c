// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "rca/alerts/alert.hpp"
#include "rca/alerts/isolation_forest.hpp"
#include "rca/telemetry/records.hpp"

namespace rca::alerts {

struct InvocationFeature {
  std::string caller;
  std::string callee;
  double response_time_ms = 0.0;
  int status_code = 0;
  EpochMs timestamp = 0;
};

std::vector<InvocationFeature> invocation_features(const std::vector<telemetry::TraceSpan>& spans);

/// For each invocation pair and each of the two dimensions (response time,
/// status code) a one-dimensional forest is fit on baseline and window
/// features together, seeded with config.seed mixed with the pair and
/// dimension. Window features scoring above the threshold alert: PD for
/// response times above the pair median, ERROR for status codes other than
/// the pair's most common one. Pairs with fewer than two features and
/// constant dimensions are skipped; a notice is appended for each.
std::vector<Alert> iforest_trace_alerts(const std::vector<InvocationFeature>& window,
                                        const std::vector<InvocationFeature>& baseline,
                                        const IsolationForestConfig& config,
                                        std::vector<std::string>* notices = nullptr);

}  // namespace rca::alerts
