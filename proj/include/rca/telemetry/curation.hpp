// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <vector>

#include "rca/telemetry/records.hpp"

namespace rca::telemetry {

inline constexpr std::chrono::seconds kDefaultMinScenarioGap{45};
inline constexpr std::chrono::minutes kDefaultMaxTelemetryGap{30};
inline constexpr std::chrono::minutes kDefaultBaseline{15};

/// Drops every scenario whose window intersects, or starts less than
/// `min_gap` after the end of, the last kept scenario. Input is ordered by
/// window_start (then id) before filtering. The output satisfies
/// start[i+1] - end[i] >= min_gap.
std::vector<FaultScenario> filter_overlapping_scenarios(std::vector<FaultScenario> scenarios,
                                                        std::chrono::milliseconds min_gap = kDefaultMinScenarioGap);

/// An open interval (begin, end) with no telemetry records.
struct Silence {
  EpochMs begin = 0;
  EpochMs end = 0;
};

/// Silences strictly longer than `max_gap` between consecutive timestamps.
std::vector<Silence> find_silences(const std::vector<EpochMs>& sorted_timestamps, std::chrono::milliseconds max_gap);

/// Removes scenarios whose closed window overlaps a silence longer than
/// `max_gap` in the merged timeline of all three modalities. Coverage edges
/// count too: a window reaching more than `max_gap` before the first record
/// or after the last one is removed. Empty telemetry removes everything.
std::vector<FaultScenario> filter_gap_scenarios(const std::vector<FaultScenario>& scenarios,
                                                const TelemetrySet& telemetry,
                                                std::chrono::milliseconds max_gap = kDefaultMaxTelemetryGap);

/// Telemetry scoped to one scenario. `window` holds records with timestamps in
/// [window_start, window_end]; `baseline` holds [window_start - baseline,
/// window_start).
struct ScenarioBundle {
  FaultScenario scenario;
  TelemetrySet window;
  TelemetrySet baseline;
  EpochMs baseline_start = 0;
  /// No baseline records in any modality.
  bool baseline_free = true;

  bool empty() const { return window.empty(); }
};

ScenarioBundle slice_window(const FaultScenario& scenario, const TelemetrySet& telemetry,
                            std::chrono::milliseconds baseline = kDefaultBaseline);

}  // namespace rca::telemetry
