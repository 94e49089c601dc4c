// SPDX-License-Identifier: Apache-2.0
#include "rca/alerts/alert.hpp"

#include <algorithm>
#include <cctype>

#include "rca/common/error.hpp"

namespace rca::alerts {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::Log:
      return "LOG";
    case Modality::Metric:
      return "METRIC";
    case Modality::Trace:
      return "TRACE";
  }
  return "?";
}

std::string_view to_string(AlertKind k) {
  switch (k) {
    case AlertKind::Error:
      return "ERROR";
    case AlertKind::PerformanceDegradation:
      return "PD";
    case AlertKind::MetricAnomaly:
      return "METRIC_ANOM";
    case AlertKind::LogTemplate:
      return "LOG_TEMPLATE";
  }
  return "?";
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Up:
      return "UP";
    case Direction::Down:
      return "DOWN";
    case Direction::None:
      return "NONE";
  }
  return "?";
}

Modality parse_modality(std::string_view text) {
  const auto t = lower(text);
  if (t == "log" || t == "logs") return Modality::Log;
  if (t == "metric" || t == "metrics") return Modality::Metric;
  if (t == "trace" || t == "traces") return Modality::Trace;
  throw ValidationError("unknown modality '" + std::string(text) + "'");
}

AlertKind parse_alert_kind(std::string_view text) {
  for (auto k : {AlertKind::Error, AlertKind::PerformanceDegradation, AlertKind::MetricAnomaly, AlertKind::LogTemplate}) {
    if (to_string(k) == text) return k;
  }
  throw ValidationError("unknown alert kind '" + std::string(text) + "'");
}

Direction parse_direction(std::string_view text) {
  for (auto d : {Direction::Up, Direction::Down, Direction::None}) {
    if (to_string(d) == text) return d;
  }
  throw ValidationError("unknown alert direction '" + std::string(text) + "'");
}

std::string ElementRef::label() const { return is_edge() ? entity + " --> " + callee : entity; }

void validate(const Alert& alert) {
  if (alert.element.entity.empty()) throw ValidationError("alert has no element");
  const bool metric = alert.kind == AlertKind::MetricAnomaly;
  if (metric && alert.direction == Direction::None) throw ValidationError("metric alert without direction");
  if (!metric && alert.direction != Direction::None) throw ValidationError("non-metric alert with a direction");
  if (metric != (alert.modality == Modality::Metric)) throw ValidationError("alert kind does not match modality");
}

std::string render_alert_line(const Alert& alert) {
  std::string line = format_timestamp(alert.timestamp);
  line += " | ";
  line += to_string(alert.modality);
  line += " | ";
  line += alert.element.label();
  line += " | ";
  line += alert.payload;
  if (alert.kind == AlertKind::MetricAnomaly) {
    line += " | ";
    line += alert.direction == Direction::Up ? "up" : "down";
  }
  return line;
}

std::vector<Alert> withhold_modality(std::vector<Alert> alerts, Modality modality) {
  std::erase_if(alerts, [&](const Alert& a) { return a.modality == modality; });
  return alerts;
}

void map_alerts_to_graph(std::vector<Alert>& alerts, const kgraph::KnowledgeGraph& graph) {
  for (auto& a : alerts) {
    a.unmapped = !graph.contains(a.element.entity) || (a.element.is_edge() && !graph.contains(a.element.callee));
  }
}

kgraph::AlertedElements alerted_elements(const std::vector<Alert>& alerts) {
  kgraph::AlertedElements out;
  for (const auto& a : alerts) {
    if (a.unmapped) continue;
    if (a.element.is_edge()) {
      out.edges.emplace(a.element.entity, a.element.callee);
    } else {
      out.entities.insert(a.element.entity);
    }
  }
  return out;
}

std::vector<const Alert*> alerts_for_entity(const std::vector<Alert>& alerts, std::string_view entity) {
  std::vector<const Alert*> out;
  for (const auto& a : alerts) {
    if (a.element.entity == entity || a.element.callee == entity) out.push_back(&a);
  }
  return out;
}

}  // namespace rca::alerts
