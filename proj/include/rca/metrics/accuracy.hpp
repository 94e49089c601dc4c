// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "rca/metrics/correctness.hpp"

namespace rca::metrics {

/// Fraction of records with a correct hypothesis within the top k. Throws
/// ValidationError on an empty set or k outside 1..3.
double accuracy_at_k(const std::vector<CorrectnessRecord>& records, Measure measure, int k);

/// Mean of A@1..A@K.
double avg_at_K(const std::vector<CorrectnessRecord>& records, Measure measure, int K = kMaxRank);

/// Mean over k = 1..3 of the top-k indicator for a single record: exactly
/// 1, 2/3, 1/3 or 0. Round only for display.
double per_sample_score(const CorrectnessRecord& record, Measure measure);

struct RandomBaseline {
  double la = 0.0;
  double ta = 0.0;
  double ha = 0.0;
};

/// k / n_locations, k / n_types, k / (n_locations * n_types). Throws
/// ValidationError when n_locations < k or n_types < 1.
RandomBaseline random_guessing_baseline(std::size_t n_locations, std::size_t n_types, int k);

/// Mean of the baseline over k = 1..K.
RandomBaseline random_guessing_avg(std::size_t n_locations, std::size_t n_types, int K = kMaxRank);

}  // namespace rca::metrics
