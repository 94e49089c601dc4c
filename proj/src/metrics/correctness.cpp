// SPDX-License-Identifier: Apache-2.0
#include "rca/metrics/correctness.hpp"

#include <algorithm>
#include <cctype>

#include "rca/common/error.hpp"

namespace rca::metrics {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

nlohmann::json flags(const std::array<bool, kMaxRank>& a) { return nlohmann::json(a); }

std::array<bool, kMaxRank> flags_from(const nlohmann::json& j) {
  std::array<bool, kMaxRank> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = j.at(i).get<bool>();
  return out;
}

}  // namespace

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::LA:
      return "LA";
    case Measure::TA:
      return "TA";
    case Measure::PA:
      return "PA";
    case Measure::HA:
      return "HA";
  }
  return "?";
}

Measure parse_measure(std::string_view text) {
  for (auto m : kAllMeasures) {
    if (iequals(to_string(m), text)) return m;
  }
  throw ValidationError("unknown measure '" + std::string(text) + "'");
}

bool CorrectnessRecord::at(Measure measure, int rank) const {
  if (rank < 1 || rank > kMaxRank) throw ValidationError("rank must lie in 1..3");
  const auto i = static_cast<std::size_t>(rank - 1);
  switch (measure) {
    case Measure::LA:
      return location[i];
    case Measure::TA:
      return type[i];
    case Measure::PA:
      return path[i];
    case Measure::HA:
      return hypothesis[i];
  }
  return false;
}

bool CorrectnessRecord::within(Measure measure, int k) const {
  if (k < 1 || k > kMaxRank) throw ValidationError("k must lie in 1..3");
  for (int r = 1; r <= k; ++r) {
    if (at(measure, r)) return true;
  }
  return false;
}

CorrectnessRecord evaluate(const std::string& scenario_id, agent::Outcome outcome,
                           const std::vector<agent::Hypothesis>& hypotheses, const std::string& gt_location,
                           const std::string& gt_fault_type, const kgraph::KnowledgeGraph& graph,
                           const kgraph::AlertedElements& alerted) {
  CorrectnessRecord r;
  r.scenario_id = scenario_id;
  r.outcome = outcome;
  if (agent::is_execution_error(outcome)) return r;
  const auto gt_loc = trim(gt_location);
  const auto gt_type = trim(gt_fault_type);
  for (const auto& h : hypotheses) {
    if (h.rank < 1 || h.rank > kMaxRank) continue;
    const auto i = static_cast<std::size_t>(h.rank - 1);
    r.location[i] = trim(h.location) == gt_loc;
    r.type[i] = iequals(trim(h.fault_type), gt_type);
    r.hypothesis[i] = r.location[i] && r.type[i];
    r.path[i] = kgraph::is_valid_walk(graph, h.path, alerted).valid;
  }
  return r;
}

nlohmann::json to_json(const CorrectnessRecord& r) {
  return {{"scenario_id", r.scenario_id},
          {"outcome", agent::to_string(r.outcome)},
          {"location", flags(r.location)},
          {"type", flags(r.type)},
          {"hypothesis", flags(r.hypothesis)},
          {"path", flags(r.path)}};
}

CorrectnessRecord correctness_from_json(const nlohmann::json& j) {
  CorrectnessRecord r;
  r.scenario_id = j.at("scenario_id").get<std::string>();
  r.outcome = agent::parse_outcome(j.at("outcome").get<std::string>());
  r.location = flags_from(j.at("location"));
  r.type = flags_from(j.at("type"));
  r.hypothesis = flags_from(j.at("hypothesis"));
  r.path = flags_from(j.at("path"));
  return r;
}

}  // namespace rca::metrics
