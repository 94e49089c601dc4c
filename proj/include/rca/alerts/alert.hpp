// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rca/common/time.hpp"
#include "rca/kgraph/graph.hpp"
#include "rca/kgraph/paths.hpp"

namespace rca::alerts {

/// Declaration order is the tie-break order: LOG < METRIC < TRACE.
enum class Modality { Log, Metric, Trace };
enum class AlertKind { Error, PerformanceDegradation, MetricAnomaly, LogTemplate };
enum class Direction { Up, Down, None };

std::string_view to_string(Modality m);
std::string_view to_string(AlertKind k);
std::string_view to_string(Direction d);
// Inverses of to_string; throw ValidationError on unknown text.
Modality parse_modality(std::string_view text);
AlertKind parse_alert_kind(std::string_view text);
Direction parse_direction(std::string_view text);

/// An entity, or a (caller, callee) invocation pair when `callee` is set.
struct ElementRef {
  std::string entity;
  std::string callee;

  static ElementRef node(std::string name) { return {std::move(name), {}}; }
  static ElementRef edge(std::string caller, std::string callee) { return {std::move(caller), std::move(callee)}; }

  bool is_edge() const { return !callee.empty(); }
  /// "name" or "caller --> callee".
  std::string label() const;

  auto operator<=>(const ElementRef&) const = default;
};

/// Baseline statistics behind a metric alert, kept so the 3-sigma decision
/// can be re-checked from the alert dump.
struct MetricEvidence {
  double value = 0.0;
  double mean = 0.0;
  double stddev = 0.0;

  bool operator==(const MetricEvidence&) const = default;
};

struct Alert {
  Modality modality = Modality::Log;
  EpochMs timestamp = 0;
  ElementRef element;
  AlertKind kind = AlertKind::LogTemplate;
  Direction direction = Direction::None;
  /// Log message, metric name, or "PD" / "ERROR <status>" for invocations.
  std::string payload;
  /// Element does not resolve against the knowledge graph.
  bool unmapped = false;
  std::optional<MetricEvidence> evidence;
  std::optional<double> anomaly_score;

  bool operator==(const Alert&) const = default;
};

/// Throws ValidationError when direction and kind disagree or the element
/// is empty.
void validate(const Alert& alert);

/// "YYYY-MM-DD HH:MM:SS.mmm | METRIC | entity | metric | up",
/// "... | LOG | entity | message", "... | TRACE | caller --> callee | PD".
std::string render_alert_line(const Alert& alert);

/// Drops every alert of `modality`, preserving the order of the rest.
std::vector<Alert> withhold_modality(std::vector<Alert> alerts, Modality modality);

/// Sets `unmapped` on alerts whose entity (or either invocation endpoint) is
/// not in the graph.
void map_alerts_to_graph(std::vector<Alert>& alerts, const kgraph::KnowledgeGraph& graph);

/// Mapped alert elements, for propagation-path termination checks.
kgraph::AlertedElements alerted_elements(const std::vector<Alert>& alerts);

/// Alerts attached to `entity`: its own, and invocations where it is caller
/// or callee.
std::vector<const Alert*> alerts_for_entity(const std::vector<Alert>& alerts, std::string_view entity);

}  // namespace rca::alerts
