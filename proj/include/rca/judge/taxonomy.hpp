// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rca::judge {

enum class RfScope { PerHypothesis, FullTrace, CrossCutting };
enum class RfCategory { General, RcaSpecific, Procedural };

std::string_view to_string(RfScope s);
std::string_view to_string(RfCategory c);

struct ReasoningFailure {
  std::string id;  // "RF-01"
  std::string name;
  std::string description;
  RfScope scope = RfScope::PerHypothesis;
  RfCategory category = RfCategory::General;
  int min_severity = 1;
  int max_severity = 5;
};

inline constexpr std::string_view kDivergenceGate = "RF-00";

/// RF-00 (structured/unstructured divergence gate) followed by RF-01..RF-16.
const std::vector<ReasoningFailure>& taxonomy();
/// RF-01..RF-16, the failures counted in prevalence and risk statistics.
std::vector<std::string> analysis_failure_ids();

/// Canonical "RF-NN" form of "rf-1", "RF01", "RF-01"; nullopt otherwise.
std::optional<std::string> normalize_rf_id(std::string_view text);
/// Lookup by canonical or loose id.
const ReasoningFailure* find_failure(std::string_view id);

}  // namespace rca::judge
