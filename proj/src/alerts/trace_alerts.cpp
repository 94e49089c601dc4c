// SPDX-License-Identifier: Apache-2.0
#include "rca/alerts/trace_alerts.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include <spdlog/spdlog.h>

#include "rca/common/hash.hpp"

namespace rca::alerts {
namespace {

using Pair = std::pair<std::string, std::string>;

void notice(std::vector<std::string>* notices, std::string text) {
  spdlog::debug("{}", text);
  if (notices != nullptr) notices->push_back(std::move(text));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int mode(const std::vector<double>& v) {
  std::map<int, std::size_t> counts;
  for (double x : v) ++counts[static_cast<int>(x)];
  // Ties resolve to the smallest code.
  return std::max_element(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
           return a.second < b.second;
         })->first;
}

}  // namespace

std::vector<InvocationFeature> invocation_features(const std::vector<telemetry::TraceSpan>& spans) {
  std::vector<InvocationFeature> out;
  out.reserve(spans.size());
  for (const auto& s : spans) out.push_back({s.caller, s.callee, s.duration_ms, s.status_code, s.start});
  return out;
}

std::vector<Alert> iforest_trace_alerts(const std::vector<InvocationFeature>& window,
                                        const std::vector<InvocationFeature>& baseline,
                                        const IsolationForestConfig& config, std::vector<std::string>* notices) {
  std::map<Pair, std::vector<const InvocationFeature*>> window_by_pair;
  std::map<Pair, std::vector<const InvocationFeature*>> baseline_by_pair;
  for (const auto& f : window) window_by_pair[{f.caller, f.callee}].push_back(&f);
  for (const auto& f : baseline) baseline_by_pair[{f.caller, f.callee}].push_back(&f);

  std::vector<Alert> out;
  for (const auto& [pair, targets] : window_by_pair) {
    std::vector<const InvocationFeature*> fitted = targets;
    if (auto it = baseline_by_pair.find(pair); it != baseline_by_pair.end()) {
      fitted.insert(fitted.end(), it->second.begin(), it->second.end());
    }
    const auto label = pair.first + " --> " + pair.second;
    if (fitted.size() < 2) {
      notice(notices, "invocation pair " + label + ": fewer than two features, skipped");
      continue;
    }

    enum Dim { ResponseTime, StatusCode };
    for (Dim dim : {ResponseTime, StatusCode}) {
      const char* dim_name = dim == ResponseTime ? "response_time" : "status_code";
      auto value = [dim](const InvocationFeature& f) {
        return dim == ResponseTime ? f.response_time_ms : static_cast<double>(f.status_code);
      };
      std::vector<double> values;
      std::vector<std::vector<double>> rows;
      for (const auto* f : fitted) {
        values.push_back(value(*f));
        rows.push_back({values.back()});
      }
      const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
      if (*lo == *hi) {
        notice(notices, "invocation pair " + label + ": constant " + dim_name + ", skipped");
        continue;
      }
      auto cfg = config;
      cfg.seed = config.seed ^ fnv1a64(pair.first + "|" + pair.second + "|" + dim_name);
      const auto forest = IsolationForest::fit(rows, cfg);
      const double med = median(values);
      const int common = mode(values);

      for (const auto* f : targets) {
        const double v = value(*f);
        const double s = forest.score({v});
        if (s <= config.score_threshold) continue;
        Alert a;
        a.modality = Modality::Trace;
        a.timestamp = f->timestamp;
        a.element = ElementRef::edge(f->caller, f->callee);
        a.direction = Direction::None;
        a.anomaly_score = s;
        if (dim == ResponseTime) {
          if (v <= med) continue;
          a.kind = AlertKind::PerformanceDegradation;
          a.payload = "PD";
        } else {
          if (f->status_code == common) continue;
          a.kind = AlertKind::Error;
          a.payload = "ERROR " + std::to_string(f->status_code);
        }
        out.push_back(std::move(a));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Alert& a, const Alert& b) {
    return std::tie(a.timestamp, a.element, a.kind) < std::tie(b.timestamp, b.element, b.kind);
  });
  return out;
}

}  // namespace rca::alerts
