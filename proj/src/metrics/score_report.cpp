// SPDX-License-Identifier: Apache-2.0
#include "rca/metrics/score_report.hpp"

#include <fmt/format.h>

namespace rca::metrics {
namespace {

struct Row {
  std::string label;
  std::string measure;
  double a1;
  double a3;
  double avg;
};

std::vector<Row> rows(const ScoreSummary& s, const std::optional<BaselineShape>& shape) {
  std::vector<Row> out;
  for (auto m : kAllMeasures) {
    const auto& acc = s.accuracy.at(m);
    out.push_back({"agent", std::string(to_string(m)), acc[0], acc[2], s.avg.at(m)});
  }
  if (shape) {
    const auto b1 = random_guessing_baseline(shape->n_locations, shape->n_types, 1);
    const auto b3 = random_guessing_baseline(shape->n_locations, shape->n_types, 3);
    const auto avg = random_guessing_avg(shape->n_locations, shape->n_types);
    out.push_back({"random", "LA", b1.la, b3.la, avg.la});
    out.push_back({"random", "TA", b1.ta, b3.ta, avg.ta});
    out.push_back({"random", "HA", b1.ha, b3.ha, avg.ha});
  }
  return out;
}

}  // namespace

ScoreSummary summarize(const std::vector<CorrectnessRecord>& records) {
  ScoreSummary s;
  s.samples = records.size();
  for (auto m : kAllMeasures) {
    for (int k = 1; k <= kMaxRank; ++k) s.accuracy[m][static_cast<std::size_t>(k - 1)] = accuracy_at_k(records, m, k);
    s.avg[m] = avg_at_K(records, m);
  }
  return s;
}

std::string score_table_csv(const ScoreSummary& summary, const std::optional<BaselineShape>& shape) {
  std::string out = "row,measure,A@1,A@3,Avg@3\n";
  for (const auto& r : rows(summary, shape)) {
    out += fmt::format("{},{},{:.6f},{:.6f},{:.6f}\n", r.label, r.measure, r.a1, r.a3, r.avg);
  }
  return out;
}

std::string score_table_markdown(const ScoreSummary& summary, const std::optional<BaselineShape>& shape) {
  std::string out = "| Row | Measure | A@1 | A@3 | Avg@3 |\n|---|---|---|---|---|\n";
  for (const auto& r : rows(summary, shape)) {
    out += fmt::format("| {} | {} | {:.2f} | {:.2f} | {:.2f} |\n", r.label, r.measure, r.a1, r.a3, r.avg);
  }
  return out;
}

}  // namespace rca::metrics
