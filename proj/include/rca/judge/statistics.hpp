// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rca/judge/annotation.hpp"
#include "rca/metrics/correctness.hpp"

namespace rca::judge {

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Wilson score interval. Throws std::invalid_argument for n = 0 or
/// successes > n.
Interval wilson_ci(std::size_t successes, std::size_t n, double confidence = 0.95);

struct AnnotatedTrace {
  JudgeAnnotation annotation;
  std::string dataset;
  std::string model;
  std::string workflow;
};

struct PrevalenceRow {
  std::string dataset;
  std::string model;
  std::string workflow;
  std::string rf;
  std::size_t present = 0;
  std::size_t total = 0;
  double proportion = 0.0;
};

/// Fraction of traces per (dataset, model, workflow) group in which each of
/// RF-01..RF-16 appears at least once. Groups in key order, RFs in id order.
std::vector<PrevalenceRow> prevalence(const std::vector<AnnotatedTrace>& traces);

struct RiskStats {
  std::string rf;
  metrics::Measure measure = metrics::Measure::LA;
  std::size_t n1 = 0;  // traces with the RF
  std::size_t c1 = 0;  // of which correct
  std::size_t n0 = 0;  // traces without the RF
  std::size_t c0 = 0;
  /// Both strata non-empty.
  bool defined = false;
  std::optional<double> p1, p0, rd, rr;
  std::optional<Interval> ci_p1, ci_p0, ci_rd;
};

/// Statistics from 2x2 counts. RR is absent when p0 = 0; RD's interval is the
/// Newcombe hybrid score interval built from the two Wilson intervals.
RiskStats risk_from_counts(std::size_t c1, std::size_t n1, std::size_t c0, std::size_t n0,
                           double confidence = 0.95);

struct JudgedSample {
  JudgeAnnotation annotation;
  metrics::CorrectnessRecord correctness;
};

/// A trace counts as correct for `measure` when any of its ranked
/// hypotheses is correct.
RiskStats risk_stats(const std::vector<JudgedSample>& samples, const std::string& rf, metrics::Measure measure);

/// Cohen's kappa for two binary label vectors; nullopt when chance agreement
/// is 1. Throws std::invalid_argument on length mismatch or empty input.
std::optional<double> cohens_kappa(const std::vector<bool>& a, const std::vector<bool>& b);

/// CSV tables: "dataset,model,workflow,rf,present,total,proportion" and
/// "rf,measure,n1,c1,n0,c0,p1,p0,rd,rr,p1_lower,p1_upper,p0_lower,p0_upper,rd_lower,rd_upper"
/// (undefined cells written as "NA").
std::string prevalence_csv(const std::vector<PrevalenceRow>& rows);
std::string risk_csv(const std::vector<RiskStats>& rows);

}  // namespace rca::judge
