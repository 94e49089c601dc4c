// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rca/alerts/alert.hpp"

namespace rca::alerts {

enum class UnificationStrategy { TimeBased, ElementBased };

std::string to_string(UnificationStrategy s);
/// Accepts "TIME_BASED" / "ELEMENT_BASED" (case-insensitive).
UnificationStrategy parse_unification_strategy(std::string_view text);

inline constexpr std::string_view kNoAlertsText = "No alerts were detected.";

struct UnifiedAlerts {
  std::string text;
  /// Indices into the input list, in rendered order.
  std::vector<std::size_t> order;
  /// True when the input was empty and `text` is kNoAlertsText.
  bool no_alerts = false;
};

/// TIME_BASED: one line per alert sorted by (timestamp, modality, element,
/// payload). ELEMENT_BASED: a "### <element>" header per element, elements
/// ordered by earliest alert (then label), alerts chronological within each.
UnifiedAlerts unify_alerts(const std::vector<Alert>& alerts, UnificationStrategy strategy);

}  // namespace rca::alerts
