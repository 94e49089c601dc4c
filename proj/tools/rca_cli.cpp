// SPDX-License-Identifier: Apache-2.0
// Command-line entry point: rca <verb> --config run.json [overrides]

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "rca/harness/config.hpp"
#include "rca/harness/extract.hpp"
#include "rca/harness/judge_cmd.hpp"
#include "rca/harness/report.hpp"
#include "rca/harness/run.hpp"
#include "rca/harness/score.hpp"

namespace {

struct CommonOptions {
  std::string config;
  std::vector<std::string> sets;
  std::string workflow;
  std::string unification;
  std::string kg_representation;
  std::string withhold;
  std::string output_dir;
  std::string seed;
  std::string parallelism;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("-c,--config", o.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--set", o.sets, "Override a config key: key.path=value (repeatable)");
  cmd->add_option("--workflow", o.workflow, "STRAIGHT_SHOT, REACT or PLAN_EXECUTE");
  cmd->add_option("--alert-unification", o.unification, "TIME_BASED or ELEMENT_BASED");
  cmd->add_option("--kg-representation", o.kg_representation, "LIST or JSON_OBJECT");
  cmd->add_option("--withhold", o.withhold, "Modality to withhold: LOG, METRIC, TRACE or NONE");
  cmd->add_option("-o,--output-dir", o.output_dir, "Run directory");
  cmd->add_option("--seed", o.seed, "Seed");
  cmd->add_option("-j,--parallelism", o.parallelism, "Worker threads (0 = hardware threads)");
}

rca::harness::RunConfig load(const CommonOptions& o) {
  std::vector<std::string> overrides;
  const auto flag = [&](const char* key, const std::string& value, bool json_value) {
    if (value.empty()) return;
    overrides.push_back(fmt::format("{}={}", key, json_value ? value : nlohmann::json(value).dump()));
  };
  flag("workflow", o.workflow, false);
  flag("alert_unification", o.unification, false);
  flag("kg_representation", o.kg_representation, false);
  flag("withhold", o.withhold, false);
  flag("output_dir", o.output_dir, false);
  flag("seed", o.seed, true);
  flag("parallelism", o.parallelism, true);
  overrides.insert(overrides.end(), o.sets.begin(), o.sets.end());
  return rca::harness::load_config(o.config, overrides);
}

int run_extract(const rca::harness::RunConfig& config) {
  const auto s = rca::harness::cmd_extract(config);
  for (const auto& n : s.notices) spdlog::info("{}", n);
  fmt::print("extracted alerts for {} scenarios ({} loaded, {} after overlap rule)\n", s.after_gap_filter, s.loaded,
             s.after_overlap_filter);
  return 0;
}

int run_build_kg(const rca::harness::RunConfig& config) {
  const auto problems = rca::harness::cmd_build_kg(config);
  for (const auto& p : problems) fmt::print(stderr, "{}\n", p);
  if (!problems.empty()) return 1;
  fmt::print("knowledge graph valid; renderings written\n");
  return 0;
}

int run_run(const rca::harness::RunConfig& config) {
  const auto s = rca::harness::cmd_run(config);
  for (const auto& e : s.errors) spdlog::error("{}", e);
  fmt::print("executed {}, resumed {}, not run {}\n", s.executed, s.resumed, s.not_run);
  for (const auto& [outcome, count] : s.outcomes) fmt::print("  {}: {}\n", outcome, count);
  if (s.aborted) spdlog::error("run aborted after {} consecutive endpoint failures", config.max_endpoint_failures);
  return s.errors.empty() && !s.aborted && s.not_run == 0 ? 0 : 1;
}

int run_score(const rca::harness::RunConfig& config) {
  rca::harness::cmd_score(config);
  fmt::print("{}", rca::harness::read_file(rca::harness::Store(config.output_dir).scores_dir() / "scores.md"));
  return 0;
}

int run_judge(const rca::harness::RunConfig& config) {
  const auto s = rca::harness::cmd_judge(config);
  for (const auto& e : s.errors) spdlog::error("{}", e);
  fmt::print("sampled {}, annotated {}, judge-failed {}, parse retries {}\n", s.sampled, s.annotated, s.failed.size(),
             s.parse_retries);
  return s.errors.empty() && s.failed.empty() ? 0 : 1;
}

int run_report(const rca::harness::RunConfig& config) {
  rca::harness::cmd_report(config);
  fmt::print("wrote {}\n", rca::harness::Store(config.output_dir).report().string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Root cause analysis agent harness"};
  app.require_subcommand(1);
  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error");

  struct Verb {
    const char* name;
    const char* help;
    int (*fn)(const rca::harness::RunConfig&);
  };
  const Verb verbs[] = {
      {"extract", "Curate scenarios and extract alerts", run_extract},
      {"build-kg", "Validate the knowledge graph and write its renderings", run_build_kg},
      {"run", "Run the agent workflow on every curated scenario", run_run},
      {"score", "Score stored hypotheses", run_score},
      {"judge", "Annotate sampled traces with the judge model", run_judge},
      {"report", "Write report.md from the run directory", run_report},
  };
  std::vector<CommonOptions> options(std::size(verbs));
  std::vector<CLI::App*> commands;
  for (std::size_t i = 0; i < std::size(verbs); ++i) {
    auto* cmd = app.add_subcommand(verbs[i].name, verbs[i].help);
    add_common(cmd, options[i]);
    commands.push_back(cmd);
  }
  CLI11_PARSE(app, argc, argv);
  spdlog::set_default_logger(spdlog::stderr_color_mt("rca"));
  spdlog::set_level(spdlog::level::from_str(log_level));

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (!commands[i]->parsed()) continue;
    try {
      return verbs[i].fn(load(options[i]));
    } catch (const std::exception& e) {
      fmt::print(stderr, "error: {}\n", e.what());
      return 1;
    }
  }
  return 1;
}
