// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rca/agent/final_answer.hpp"
#include "rca/agent/trace.hpp"
#include "rca/kgraph/graph.hpp"
#include "rca/kgraph/paths.hpp"

namespace rca::metrics {

/// LA: location, TA: fault type, PA: path validity, HA: location and type.
enum class Measure { LA, TA, PA, HA };

inline constexpr std::array<Measure, 4> kAllMeasures = {Measure::LA, Measure::TA, Measure::PA, Measure::HA};
inline constexpr int kMaxRank = 3;

std::string_view to_string(Measure m);
Measure parse_measure(std::string_view text);

struct CorrectnessRecord {
  std::string scenario_id;
  agent::Outcome outcome = agent::Outcome::Completed;
  // Index i holds rank i + 1.
  std::array<bool, kMaxRank> location{};
  std::array<bool, kMaxRank> type{};
  std::array<bool, kMaxRank> hypothesis{};
  std::array<bool, kMaxRank> path{};

  /// Correctness of the hypothesis at `rank` (1-based) for `measure`.
  bool at(Measure measure, int rank) const;
  /// True when any hypothesis within the top `k` is correct.
  bool within(Measure measure, int k) const;

  bool operator==(const CorrectnessRecord&) const = default;
};

/// Location: exact match after trimming. Type: case-insensitive. Path:
/// is_valid_walk against the alerted elements. Runs with an execution-error
/// outcome are all-false.
CorrectnessRecord evaluate(const std::string& scenario_id, agent::Outcome outcome,
                           const std::vector<agent::Hypothesis>& hypotheses, const std::string& gt_location,
                           const std::string& gt_fault_type, const kgraph::KnowledgeGraph& graph,
                           const kgraph::AlertedElements& alerted);

nlohmann::json to_json(const CorrectnessRecord& r);
CorrectnessRecord correctness_from_json(const nlohmann::json& j);

}  // namespace rca::metrics
