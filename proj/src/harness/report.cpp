// SPDX-License-Identifier: Apache-2.0
#include "rca/harness/report.hpp"

#include <filesystem>

#include <fmt/format.h>

namespace rca::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void csv_section(std::string& out, const std::string& title, const fs::path& path) {
  if (!fs::exists(path)) return;
  out += fmt::format("## {}\n\n```csv\n{}```\n\n", title, read_file(path));
}

}  // namespace

std::string render_report(const Store& store) {
  std::string out = "# RCA run report\n\n";

  if (fs::exists(store.extraction_report())) {
    const auto ex = read_json(store.extraction_report());
    out += "## Curation and alerts\n\n";
    out += fmt::format("- Scenarios loaded: {}\n- After overlap rule: {}\n- After telemetry gap rule: {}\n",
                       ex.at("loaded").get<int>(), ex.at("after_overlap_filter").get<int>(),
                       ex.at("after_gap_filter").get<int>());
    out += fmt::format("- Withheld modality: {}\n\n", ex.value("withheld", "NONE"));
    out += "| Scenario | Alerts | LOG | METRIC | TRACE | Unmapped |\n|---|---|---|---|---|---|\n";
    for (const auto& s : ex.at("scenarios")) {
      const auto& c = s.at("per_modality");
      out += fmt::format("| {} | {} | {} | {} | {} | {} |\n", s.at("id").get<std::string>(), s.at("alerts").get<int>(),
                         c.at("LOG").get<int>(), c.at("METRIC").get<int>(), c.at("TRACE").get<int>(),
                         s.at("unmapped").get<int>());
    }
    out += "\n";
  }

  if (fs::exists(store.manifest())) {
    const auto m = read_json(store.manifest());
    out += "## Inference outcomes\n\n";
    out += fmt::format("- Workflow: {}\n- Model: {}\n- Complete: {}\n\n", m.at("workflow").get<std::string>(),
                       m.at("model").get<std::string>(), m.at("complete").get<bool>() ? "yes" : "no");
    out += "| Outcome | Scenarios |\n|---|---|\n";
    for (const auto& [outcome, count] : m.at("outcome_counts").items()) {
      out += fmt::format("| {} | {} |\n", outcome, count.get<int>());
    }
    out += "\n";
  }

  const auto scores_md = store.scores_dir() / "scores.md";
  if (fs::exists(scores_md)) out += "## Accuracy\n\n" + read_file(scores_md) + "\n";
  csv_section(out, "Modality holdout", store.scores_dir() / "holdout.csv");
  csv_section(out, "Reasoning failure prevalence", store.judge_dir() / "prevalence.csv");
  csv_section(out, "Risk by reasoning failure", store.judge_dir() / "risk.csv");

  const auto failures = store.judge_dir() / "failures.json";
  if (fs::exists(failures)) {
    const auto f = read_json(failures);
    if (!f.empty()) {
      out += "## Traces excluded from judging\n\n";
      for (const auto& e : f) {
        out += fmt::format("- {}: {}\n", e.at("trace_id").get<std::string>(), e.at("reason").get<std::string>());
      }
      out += "\n";
    }
  }
  return out;
}

std::string cmd_report(const RunConfig& config) {
  const Store store(config.output_dir);
  auto text = render_report(store);
  write_file_atomic(store.report(), text);
  return text;
}

}  // namespace rca::harness
