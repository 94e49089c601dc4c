// SPDX-License-Identifier: Apache-2.0
#include "rca/metrics/holdout.hpp"

#include <map>

#include "rca/common/error.hpp"
#include "rca/metrics/accuracy.hpp"

namespace rca::metrics {

std::vector<MeasureDelta> holdout_delta(const std::vector<CorrectnessRecord>& full,
                                        const std::vector<CorrectnessRecord>& holdout, double alpha) {
  std::map<std::string, const CorrectnessRecord*> by_id;
  for (const auto& r : holdout) {
    if (!by_id.emplace(r.scenario_id, &r).second) throw ValidationError("duplicate scenario id " + r.scenario_id);
  }
  if (full.size() != holdout.size()) throw ValidationError("full and holdout runs cover different scenarios");
  std::vector<std::pair<const CorrectnessRecord*, const CorrectnessRecord*>> pairs;
  for (const auto& r : full) {
    auto it = by_id.find(r.scenario_id);
    if (it == by_id.end()) throw ValidationError("scenario " + r.scenario_id + " missing from the holdout run");
    pairs.emplace_back(&r, it->second);
  }
  if (pairs.empty()) throw ValidationError("holdout comparison over an empty record set");

  std::vector<MeasureDelta> out;
  for (auto m : kAllMeasures) {
    std::vector<double> a;
    std::vector<double> b;
    for (const auto& [f, h] : pairs) {
      a.push_back(per_sample_score(*h, m));
      b.push_back(per_sample_score(*f, m));
    }
    MeasureDelta d;
    d.measure = m;
    d.full_avg = avg_at_K(full, m);
    d.holdout_avg = avg_at_K(holdout, m);
    d.delta = d.holdout_avg - d.full_avg;
    d.test = wilcoxon_signed_rank(a, b);
    d.significant = d.test.defined && d.test.p_value < alpha;
    out.push_back(d);
  }
  return out;
}

}  // namespace rca::metrics
