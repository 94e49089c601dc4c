// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rca/metrics/accuracy.hpp"
#include "rca/metrics/correctness.hpp"

namespace rca::metrics {

struct ScoreSummary {
  /// A@1, A@2, A@3 per measure.
  std::map<Measure, std::array<double, kMaxRank>> accuracy;
  std::map<Measure, double> avg;
  std::size_t samples = 0;
};

ScoreSummary summarize(const std::vector<CorrectnessRecord>& records);

struct BaselineShape {
  std::size_t n_locations = 0;
  std::size_t n_types = 0;
};

/// CSV with header "row,measure,A@1,A@3,Avg@3": one "agent" row per measure,
/// then "random" rows for LA, TA and HA when a shape is given. Six decimals.
std::string score_table_csv(const ScoreSummary& summary, const std::optional<BaselineShape>& shape);

/// Markdown grid with the same content, two decimals.
std::string score_table_markdown(const ScoreSummary& summary, const std::optional<BaselineShape>& shape);

}  // namespace rca::metrics
