// SPDX-License-Identifier: Apache-2.0
#include "rca/metrics/accuracy.hpp"

#include <algorithm>

#include "rca/common/error.hpp"

namespace rca::metrics {

double accuracy_at_k(const std::vector<CorrectnessRecord>& records, Measure measure, int k) {
  if (records.empty()) throw ValidationError("accuracy over an empty record set");
  if (k < 1 || k > kMaxRank) throw ValidationError("k must lie in 1..3");
  std::size_t hits = 0;
  for (const auto& r : records) hits += r.within(measure, k) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

double avg_at_K(const std::vector<CorrectnessRecord>& records, Measure measure, int K) {
  if (K < 1 || K > kMaxRank) throw ValidationError("K must lie in 1..3");
  double sum = 0.0;
  for (int k = 1; k <= K; ++k) sum += accuracy_at_k(records, measure, k);
  return sum / K;
}

double per_sample_score(const CorrectnessRecord& record, Measure measure) {
  int hits = 0;
  for (int k = 1; k <= kMaxRank; ++k) hits += record.within(measure, k) ? 1 : 0;
  return static_cast<double>(hits) / kMaxRank;
}

RandomBaseline random_guessing_baseline(std::size_t n_locations, std::size_t n_types, int k) {
  if (k < 1) throw ValidationError("k must be positive");
  if (n_types < 1) throw ValidationError("random baseline needs at least one fault type");
  if (n_locations < static_cast<std::size_t>(k)) throw ValidationError("random baseline needs n_locations >= k");
  const double kk = k;
  const double nl = static_cast<double>(n_locations);
  const double nt = static_cast<double>(n_types);
  // TA saturates once k covers every type.
  return {kk / nl, std::min(1.0, kk / nt), std::min(1.0, kk / (nl * nt))};
}

RandomBaseline random_guessing_avg(std::size_t n_locations, std::size_t n_types, int K) {
  RandomBaseline sum;
  for (int k = 1; k <= K; ++k) {
    const auto b = random_guessing_baseline(n_locations, n_types, k);
    sum.la += b.la;
    sum.ta += b.ta;
    sum.ha += b.ha;
  }
  return {sum.la / K, sum.ta / K, sum.ha / K};
}

}  // namespace rca::metrics
