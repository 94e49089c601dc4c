// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "rca/harness/config.hpp"
#include "rca/harness/store.hpp"
#include "rca/kgraph/graph.hpp"
#include "rca/metrics/correctness.hpp"
#include "rca/metrics/holdout.hpp"
#include "rca/metrics/score_report.hpp"

namespace rca::harness {

/// Correctness of every curated scenario's stored hypotheses. Throws Error
/// when a scenario has no complete trace.
std::vector<metrics::CorrectnessRecord> evaluate_store(const Store& store, const kgraph::KnowledgeGraph& graph);

/// Locations are the instances of fault-bearing entity types; types are the
/// effective fault types.
metrics::BaselineShape baseline_shape(const RunConfig& config, const kgraph::KnowledgeGraph& graph);

void write_correctness(const std::filesystem::path& path, const std::vector<metrics::CorrectnessRecord>& records);
std::vector<metrics::CorrectnessRecord> read_correctness(const std::filesystem::path& path);

std::string holdout_csv(const std::vector<metrics::MeasureDelta>& deltas);

/// Writes scores/correctness.jsonl, scores.csv, scores.md, and holdout.csv
/// when `compare_to` names a scored full-modality run.
metrics::ScoreSummary cmd_score(const RunConfig& config);

}  // namespace rca::harness
