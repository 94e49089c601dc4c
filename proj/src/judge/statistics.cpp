// SPDX-License-Identifier: Apache-2.0
#include "rca/judge/statistics.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>

#include "rca/judge/taxonomy.hpp"

namespace rca::judge {

namespace {

double z_for(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must be in (0, 1)");
  return boost::math::quantile(boost::math::normal(), 1.0 - (1.0 - confidence) / 2.0);
}

std::string num(const std::optional<double>& v) { return v ? fmt::format("{:.6f}", *v) : "NA"; }

}  // namespace

Interval wilson_ci(std::size_t successes, std::size_t n, double confidence) {
  if (n == 0) throw std::invalid_argument("wilson_ci: n must be positive");
  if (successes > n) throw std::invalid_argument("wilson_ci: successes exceed n");
  const double z = z_for(confidence);
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (p + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  Interval ci{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  // Rounding can leave the bound a hair off at the boundaries.
  if (successes == 0) ci.lower = 0.0;
  if (successes == n) ci.upper = 1.0;
  return ci;
}

std::vector<PrevalenceRow> prevalence(const std::vector<AnnotatedTrace>& traces) {
  using Group = std::tuple<std::string, std::string, std::string>;
  std::map<Group, std::vector<const JudgeAnnotation*>> groups;
  for (const auto& t : traces) groups[{t.dataset, t.model, t.workflow}].push_back(&t.annotation);
  std::vector<PrevalenceRow> rows;
  const auto ids = analysis_failure_ids();
  for (const auto& [group, members] : groups) {
    for (const auto& rf : ids) {
      PrevalenceRow row{std::get<0>(group), std::get<1>(group), std::get<2>(group), rf, 0, members.size(), 0.0};
      for (const auto* a : members) row.present += a->has(rf) ? 1 : 0;
      row.proportion = static_cast<double>(row.present) / static_cast<double>(row.total);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

RiskStats risk_from_counts(std::size_t c1, std::size_t n1, std::size_t c0, std::size_t n0, double confidence) {
  RiskStats s;
  s.c1 = c1;
  s.n1 = n1;
  s.c0 = c0;
  s.n0 = n0;
  if (n1 > 0) {
    s.p1 = static_cast<double>(c1) / static_cast<double>(n1);
    s.ci_p1 = wilson_ci(c1, n1, confidence);
  }
  if (n0 > 0) {
    s.p0 = static_cast<double>(c0) / static_cast<double>(n0);
    s.ci_p0 = wilson_ci(c0, n0, confidence);
  }
  s.defined = n1 > 0 && n0 > 0;
  if (!s.defined) return s;
  const double p1 = *s.p1;
  const double p0 = *s.p0;
  s.rd = p1 - p0;
  if (p0 > 0.0) s.rr = p1 / p0;
  const auto [l1, u1] = *s.ci_p1;
  const auto [l0, u0] = *s.ci_p0;
  s.ci_rd = Interval{*s.rd - std::sqrt((p1 - l1) * (p1 - l1) + (u0 - p0) * (u0 - p0)),
                     *s.rd + std::sqrt((u1 - p1) * (u1 - p1) + (p0 - l0) * (p0 - l0))};
  return s;
}

RiskStats risk_stats(const std::vector<JudgedSample>& samples, const std::string& rf, metrics::Measure measure) {
  std::size_t c1 = 0, n1 = 0, c0 = 0, n0 = 0;
  for (const auto& s : samples) {
    const bool correct = s.correctness.within(measure, metrics::kMaxRank);
    if (s.annotation.has(rf)) {
      ++n1;
      c1 += correct ? 1 : 0;
    } else {
      ++n0;
      c0 += correct ? 1 : 0;
    }
  }
  auto stats = risk_from_counts(c1, n1, c0, n0);
  stats.rf = rf;
  stats.measure = measure;
  return stats;
}

std::optional<double> cohens_kappa(const std::vector<bool>& a, const std::vector<bool>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("cohens_kappa: label vectors differ in length");
  if (a.empty()) throw std::invalid_argument("cohens_kappa: no items");
  const double n = static_cast<double>(a.size());
  double agree = 0, a_pos = 0, b_pos = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    agree += a[i] == b[i] ? 1 : 0;
    a_pos += a[i] ? 1 : 0;
    b_pos += b[i] ? 1 : 0;
  }
  const double po = agree / n;
  const double pe = (a_pos / n) * (b_pos / n) + (1 - a_pos / n) * (1 - b_pos / n);
  if (pe >= 1.0) return std::nullopt;
  return (po - pe) / (1.0 - pe);
}

std::string prevalence_csv(const std::vector<PrevalenceRow>& rows) {
  std::string out = "dataset,model,workflow,rf,present,total,proportion\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{:.6f}\n", r.dataset, r.model, r.workflow, r.rf, r.present, r.total,
                       r.proportion);
  }
  return out;
}

std::string risk_csv(const std::vector<RiskStats>& rows) {
  std::string out =
      "rf,measure,n1,c1,n0,c0,p1,p0,rd,rr,p1_lower,p1_upper,p0_lower,p0_upper,rd_lower,rd_upper\n";
  const auto lo = [](const std::optional<Interval>& i) { return i ? std::optional(i->lower) : std::nullopt; };
  const auto hi = [](const std::optional<Interval>& i) { return i ? std::optional(i->upper) : std::nullopt; };
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.rf, metrics::to_string(r.measure), r.n1,
                       r.c1, r.n0, r.c0, num(r.p1), num(r.p0), num(r.rd), num(r.rr), num(lo(r.ci_p1)),
                       num(hi(r.ci_p1)), num(lo(r.ci_p0)), num(hi(r.ci_p0)), num(lo(r.ci_rd)), num(hi(r.ci_rd)));
  }
  return out;
}

}  // namespace rca::judge
