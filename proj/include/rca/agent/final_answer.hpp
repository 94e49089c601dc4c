// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rca/kgraph/graph.hpp"
#include "rca/kgraph/paths.hpp"

namespace rca::agent {

inline constexpr std::size_t kHypothesisCount = 3;

struct Hypothesis {
  int rank = 0;
  std::string location;
  std::string fault_type;
  std::string description;
  std::string justification;
  /// Path text as written, and its parse.
  std::string path_text;
  kgraph::PropagationPath path;
  // Flags; flagged hypotheses are kept and simply score as incorrect.
  bool unknown_location = false;
  bool unknown_fault_type = false;
  bool path_unparsed = false;

  bool operator==(const Hypothesis&) const = default;
};

struct ParsedAnswer {
  std::vector<Hypothesis> hypotheses;
  std::vector<std::string> diagnostics;
  /// No "Final Answer:" marker, or no hypothesis recovered.
  bool parse_failure = false;
};

/// Parses "node1 --(label)--> node2 --(label2)--> node3". Returns nullopt
/// when the text has no arrow or an empty node.
std::optional<kgraph::PropagationPath> parse_propagation_path(std::string_view text);

/// Extracts up to three hypotheses from the text after the first
/// "Final Answer:". Field lines (Type, Description, Location, Justification,
/// Propagation path) may carry markdown bullets, numbering and bold markers;
/// a field seen twice starts the next hypothesis. Locations missing from
/// `graph` (when given) and types outside `fault_types` are flagged.
ParsedAnswer parse_final_answer(std::string_view raw, const kgraph::KnowledgeGraph* graph,
                                const std::vector<std::string>& fault_types);

nlohmann::json to_json(const Hypothesis& h);
Hypothesis hypothesis_from_json(const nlohmann::json& j);

}  // namespace rca::agent
