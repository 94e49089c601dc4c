// SPDX-License-Identifier: Apache-2.0
#include "rca/judge/taxonomy.hpp"

#include <cctype>

#include <fmt/format.h>

namespace rca::judge {

std::string_view to_string(RfScope s) {
  switch (s) {
    case RfScope::PerHypothesis:
      return "PER_HYPOTHESIS";
    case RfScope::FullTrace:
      return "FULL_TRACE";
    case RfScope::CrossCutting:
      return "CROSS_CUTTING";
  }
  return "?";
}

std::string_view to_string(RfCategory c) {
  switch (c) {
    case RfCategory::General:
      return "GENERAL";
    case RfCategory::RcaSpecific:
      return "RCA_SPECIFIC";
    case RfCategory::Procedural:
      return "PROCEDURAL";
  }
  return "?";
}

const std::vector<ReasoningFailure>& taxonomy() {
  using enum RfScope;
  using enum RfCategory;
  static const std::vector<ReasoningFailure> kTaxonomy = {
      {"RF-00", "Structured/unstructured divergence",
       "The structured final response diverges from the unstructured final answer.", FullTrace, Procedural, 1, 5},
      {"RF-01", "Fabricated evidence",
       "Asserts existence of alerts, metrics, logs, or traces not found in the provided evidence.", PerHypothesis,
       General, 1, 5},
      {"RF-02", "Metric interpretation error",
       "Misreads metric semantics (e.g., inverts directionality or confuses counters and gauges).", PerHypothesis,
       RcaSpecific, 1, 5},
      {"RF-03", "Confused provenance",
       "Attributes causation to the component observing a symptom rather than its true source.", PerHypothesis,
       RcaSpecific, 1, 5},
      {"RF-04", "Temporal misordering", "Infers causal direction that violates chronological order of observed events.",
       PerHypothesis, General, 1, 5},
      {"RF-05", "Spurious causal attribution",
       "Claims causal relationships unsupported by alerts or knowledge graph structure.", PerHypothesis, General, 1, 5},
      {"RF-06", "Unjustified instance specificity",
       "Asserts instance-level fault without discriminating instance-specific evidence.", PerHypothesis, RcaSpecific, 1,
       5},
      {"RF-07", "Arbitrary evidence selection", "Chooses evidence subsets inconsistent with systematic triage heuristics.",
       PerHypothesis, RcaSpecific, 1, 5},
      {"RF-08", "Evidential insufficiency",
       "Relies on weak or non-specific evidence insufficient to support the diagnostic claim.", PerHypothesis, General,
       1, 5},
      {"RF-09", "Failure to update belief",
       "Does not revise or retract claims contradicted by later evidence or tool outputs.", FullTrace, Procedural, 1, 5},
      {"RF-10", "Simulation or role confusion", "Treats simulated or assumed tool outputs as factual evidence.",
       FullTrace, Procedural, 1, 5},
      {"RF-11", "Excessive speculation",
       "Engages in prolonged speculative or circular reasoning that obstructs analysis.", FullTrace, Procedural, 3, 5},
      {"RF-12", "Repetition or failure to resume",
       "Repeats planning or reasoning across turns without substantive progress.", FullTrace, Procedural, 3, 5},
      {"RF-13", "Anchoring bias", "Fixates prematurely on one hypothesis and neglects exploration of alternatives.",
       CrossCutting, General, 3, 5},
      {"RF-14", "Invalid inference pattern", "Applies formal or informal logical fallacies in diagnostic reasoning.",
       CrossCutting, General, 1, 5},
      {"RF-15", "Internal contradiction", "Produces mutually inconsistent statements within the inference history.",
       CrossCutting, General, 1, 5},
      {"RF-16", "Arithmetic or aggregation error",
       "Performs numeric miscalculations or aggregations affecting interpretation.", CrossCutting, Procedural, 1, 5},
  };
  return kTaxonomy;
}

std::vector<std::string> analysis_failure_ids() {
  std::vector<std::string> ids;
  for (const auto& rf : taxonomy()) {
    if (rf.id != kDivergenceGate) ids.push_back(rf.id);
  }
  return ids;
}

std::optional<std::string> normalize_rf_id(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i + 2 > text.size() || std::toupper(static_cast<unsigned char>(text[i])) != 'R' ||
      std::toupper(static_cast<unsigned char>(text[i + 1])) != 'F') {
    return std::nullopt;
  }
  i += 2;
  if (i < text.size() && (text[i] == '-' || text[i] == '_')) ++i;
  const auto start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == start || i - start > 2) return std::nullopt;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i != text.size()) return std::nullopt;
  return fmt::format("RF-{:02d}", std::stoi(std::string(text.substr(start))));
}

const ReasoningFailure* find_failure(std::string_view id) {
  const auto canonical = normalize_rf_id(id);
  if (!canonical) return nullptr;
  for (const auto& rf : taxonomy()) {
    if (rf.id == *canonical) return &rf;
  }
  return nullptr;
}

}  // namespace rca::judge
