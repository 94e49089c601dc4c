// SPDX-License-Identifier: Apache-2.0
#include "rca/telemetry/curation.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>

namespace rca::telemetry {

std::vector<FaultScenario> filter_overlapping_scenarios(std::vector<FaultScenario> scenarios,
                                                        std::chrono::milliseconds min_gap) {
  std::stable_sort(scenarios.begin(), scenarios.end(), [](const auto& a, const auto& b) {
    return a.window_start != b.window_start ? a.window_start < b.window_start : a.id < b.id;
  });
  std::vector<FaultScenario> kept;
  kept.reserve(scenarios.size());
  for (auto& s : scenarios) {
    if (!kept.empty() && s.window_start - kept.back().window_end < min_gap.count()) continue;
    kept.push_back(std::move(s));
  }
  return kept;
}

std::vector<Silence> find_silences(const std::vector<EpochMs>& sorted_timestamps, std::chrono::milliseconds max_gap) {
  std::vector<Silence> silences;
  for (std::size_t i = 1; i < sorted_timestamps.size(); ++i) {
    if (sorted_timestamps[i] - sorted_timestamps[i - 1] > max_gap.count()) {
      silences.push_back({sorted_timestamps[i - 1], sorted_timestamps[i]});
    }
  }
  return silences;
}

std::vector<FaultScenario> filter_gap_scenarios(const std::vector<FaultScenario>& scenarios,
                                                const TelemetrySet& telemetry, std::chrono::milliseconds max_gap) {
  std::vector<EpochMs> timeline;
  timeline.reserve(telemetry.size());
  for (const auto& r : telemetry.logs) timeline.push_back(r.timestamp);
  for (const auto& r : telemetry.metrics) timeline.push_back(r.timestamp);
  for (const auto& s : telemetry.spans) timeline.push_back(s.start);
  if (timeline.empty()) {
    if (!scenarios.empty()) {
      spdlog::warn("telemetry is empty; removing all {} scenarios", scenarios.size());
    }
    return {};
  }
  std::sort(timeline.begin(), timeline.end());
  const auto silences = find_silences(timeline, max_gap);
  const EpochMs first = timeline.front();
  const EpochMs last = timeline.back();

  std::vector<FaultScenario> kept;
  for (const auto& s : scenarios) {
    bool gap = first - s.window_start > max_gap.count() || s.window_end - last > max_gap.count();
    // Silences are sorted; the first one ending after window_start decides.
    auto it = std::upper_bound(silences.begin(), silences.end(), s.window_start,
                               [](EpochMs t, const Silence& g) { return t < g.end; });
    if (it != silences.end() && it->begin < s.window_end) gap = true;
    if (!gap) kept.push_back(s);
  }
  return kept;
}

namespace {

template <typename Record, typename TimeOf>
void split_range(const std::vector<Record>& records, EpochMs base_from, EpochMs from, EpochMs to, TimeOf time_of,
                 std::vector<Record>& baseline, std::vector<Record>& window) {
  auto by_time = [&](const Record& r, EpochMs t) { return time_of(r) < t; };
  auto base_begin = std::lower_bound(records.begin(), records.end(), base_from, by_time);
  auto win_begin = std::lower_bound(records.begin(), records.end(), from, by_time);
  auto win_end = std::upper_bound(records.begin(), records.end(), to,
                                  [&](EpochMs t, const Record& r) { return t < time_of(r); });
  baseline.assign(base_begin, win_begin);
  window.assign(win_begin, win_end);
}

}  // namespace

ScenarioBundle slice_window(const FaultScenario& scenario, const TelemetrySet& telemetry,
                            std::chrono::milliseconds baseline) {
  ScenarioBundle b;
  b.scenario = scenario;
  b.baseline_start = scenario.window_start - baseline.count();
  const EpochMs from = scenario.window_start;
  const EpochMs to = scenario.window_end;
  split_range(telemetry.logs, b.baseline_start, from, to, [](const LogRecord& r) { return r.timestamp; },
              b.baseline.logs, b.window.logs);
  split_range(telemetry.metrics, b.baseline_start, from, to, [](const MetricRecord& r) { return r.timestamp; },
              b.baseline.metrics, b.window.metrics);
  split_range(telemetry.spans, b.baseline_start, from, to, [](const TraceSpan& s) { return s.start; },
              b.baseline.spans, b.window.spans);
  b.baseline_free = b.baseline.empty();
  return b;
}

}  // namespace rca::telemetry
