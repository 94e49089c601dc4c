// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "rca/metrics/correctness.hpp"
#include "rca/metrics/wilcoxon.hpp"

namespace rca::metrics {

inline constexpr double kSignificanceLevel = 0.05;

struct MeasureDelta {
  Measure measure = Measure::LA;
  double full_avg = 0.0;
  double holdout_avg = 0.0;
  /// holdout_avg - full_avg (Avg@3).
  double delta = 0.0;
  WilcoxonResult test;
  /// test.defined && test.p_value < alpha.
  bool significant = false;
};

/// Per-measure change in Avg@3 when a modality is withheld, with a paired
/// Wilcoxon test on per-sample scores. Records are paired by scenario id;
/// throws ValidationError when the two id sets differ.
std::vector<MeasureDelta> holdout_delta(const std::vector<CorrectnessRecord>& full,
                                        const std::vector<CorrectnessRecord>& holdout,
                                        double alpha = kSignificanceLevel);

}  // namespace rca::metrics
