// SPDX-License-Identifier: Apache-2.0
#include "rca/alerts/metric_alerts.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include <spdlog/spdlog.h>

namespace rca::alerts {
namespace {

using SeriesKey = std::pair<std::string, std::string>;

void notice(std::vector<std::string>* notices, std::string text) {
  spdlog::debug("{}", text);
  if (notices != nullptr) notices->push_back(std::move(text));
}

}  // namespace

SeriesStats series_stats(std::span<const double> values) {
  SeriesStats s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(values.size()));
  return s;
}

std::vector<Alert> three_sigma_metric_alerts(const std::vector<telemetry::MetricRecord>& window,
                                             const std::vector<telemetry::MetricRecord>& baseline,
                                             std::vector<std::string>* notices) {
  std::map<SeriesKey, std::vector<double>> base;
  for (const auto& m : baseline) base[{m.entity, m.metric_name}].push_back(m.value);
  std::map<SeriesKey, std::vector<const telemetry::MetricRecord*>> series;
  for (const auto& m : window) series[{m.entity, m.metric_name}].push_back(&m);

  std::vector<Alert> out;
  for (const auto& [key, points] : series) {
    const auto label = key.first + "/" + key.second;
    auto it = base.find(key);
    if (it == base.end() || it->second.size() < 2) {
      notice(notices, "metric " + label + ": fewer than two baseline points, skipped");
      continue;
    }
    const auto stats = series_stats(it->second);
    if (stats.stddev == 0.0) {
      notice(notices, "metric " + label + ": zero baseline deviation, skipped");
      continue;
    }
    const double upper = stats.mean + 3.0 * stats.stddev;
    const double lower = stats.mean - 3.0 * stats.stddev;
    for (const auto* p : points) {
      Direction d;
      if (p->value > upper) {
        d = Direction::Up;
      } else if (p->value < lower) {
        d = Direction::Down;
      } else {
        continue;
      }
      Alert a;
      a.modality = Modality::Metric;
      a.timestamp = p->timestamp;
      a.element = ElementRef::node(p->entity);
      a.kind = AlertKind::MetricAnomaly;
      a.direction = d;
      a.payload = p->metric_name;
      a.evidence = MetricEvidence{p->value, stats.mean, stats.stddev};
      out.push_back(std::move(a));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Alert& a, const Alert& b) {
    return std::tie(a.timestamp, a.element, a.payload) < std::tie(b.timestamp, b.element, b.payload);
  });
  return out;
}

}  // namespace rca::alerts
