// SPDX-License-Identifier: Apache-2.0
#include "rca/alerts/log_alerts.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "rca/common/error.hpp"

namespace rca::alerts {

std::vector<Alert> sample_log_alerts(const std::vector<telemetry::LogRecord>& logs, const DrainResult& parsed,
                                     const LogAlertConfig& config) {
  if (parsed.assignment.size() != logs.size()) {
    throw ValidationError("template assignment does not cover the log list");
  }
  std::vector<std::size_t> order(logs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return logs[a].timestamp < logs[b].timestamp; });

  std::vector<Alert> out;
  std::set<std::pair<std::string, int>> represented;
  for (auto i : order) {
    const auto& log = logs[i];
    const int tid = parsed.assignment[i];
    const bool error = log.level == telemetry::LogLevel::Error;
    const bool rare = parsed.templates.at(tid).frequency <= config.rare_threshold;
    const bool first = represented.emplace(log.entity, tid).second;
    if (!error && !rare && !first) continue;
    Alert a;
    a.modality = Modality::Log;
    a.timestamp = log.timestamp;
    a.element = ElementRef::node(log.entity);
    a.kind = error ? AlertKind::Error : AlertKind::LogTemplate;
    a.direction = Direction::None;
    a.payload = log.message;
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace rca::alerts
