// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rca/harness/config.hpp"
#include "rca/judge/annotation.hpp"

namespace rca::harness {

struct JudgeSummary {
  std::size_t sampled = 0;
  std::size_t annotated = 0;
  /// Trace ids whose judge output never parsed or whose endpoint failed.
  std::vector<std::string> failed;
  /// Parse failures that were retried successfully or not.
  std::size_t parse_retries = 0;
  std::vector<std::string> errors;
};

/// Samples traces per (dataset, model, workflow), annotates them with the
/// judge endpoint, and writes judge/annotations.jsonl, judge/log.json,
/// judge/failures.json, judge/prevalence.csv and judge/risk.csv.
JudgeSummary cmd_judge(const RunConfig& config);

std::vector<judge::JudgeAnnotation> read_annotations(const std::filesystem::path& path);

}  // namespace rca::harness
