// SPDX-License-Identifier: Apache-2.0
#include "rca/alerts/unify.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <tuple>

#include "rca/common/error.hpp"

namespace rca::alerts {

std::string to_string(UnificationStrategy s) {
  return s == UnificationStrategy::TimeBased ? "TIME_BASED" : "ELEMENT_BASED";
}

UnificationStrategy parse_unification_strategy(std::string_view text) {
  std::string u(text);
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
  if (u == "TIME_BASED" || u == "TIME") return UnificationStrategy::TimeBased;
  if (u == "ELEMENT_BASED" || u == "ELEMENT") return UnificationStrategy::ElementBased;
  throw ValidationError("unknown alert unification strategy '" + std::string(text) + "'");
}

UnifiedAlerts unify_alerts(const std::vector<Alert>& alerts, UnificationStrategy strategy) {
  UnifiedAlerts out;
  if (alerts.empty()) {
    out.text = std::string(kNoAlertsText) + "\n";
    out.no_alerts = true;
    return out;
  }

  std::vector<std::size_t> chrono(alerts.size());
  std::iota(chrono.begin(), chrono.end(), 0);
  std::stable_sort(chrono.begin(), chrono.end(), [&](std::size_t i, std::size_t j) {
    const auto& a = alerts[i];
    const auto& b = alerts[j];
    return std::tie(a.timestamp, a.modality, a.element, a.payload) <
           std::tie(b.timestamp, b.modality, b.element, b.payload);
  });

  if (strategy == UnificationStrategy::TimeBased) {
    out.order = chrono;
    for (auto i : chrono) out.text += render_alert_line(alerts[i]) + '\n';
    return out;
  }

  // Groups keyed by element label; first appearance in chronological order
  // fixes group order, and (timestamp, label) ties are resolved by the
  // chronological sort above.
  std::vector<std::string> group_order;
  std::map<std::string, std::vector<std::size_t>> groups;
  for (auto i : chrono) {
    const auto label = alerts[i].element.label();
    auto [it, inserted] = groups.try_emplace(label);
    if (inserted) group_order.push_back(label);
    it->second.push_back(i);
  }
  for (std::size_t g = 0; g < group_order.size(); ++g) {
    if (g > 0) out.text += '\n';
    out.text += "### " + group_order[g] + '\n';
    for (auto i : groups[group_order[g]]) {
      out.order.push_back(i);
      out.text += render_alert_line(alerts[i]) + '\n';
    }
  }
  return out;
}

}  // namespace rca::alerts
