// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rca/alerts/alert.hpp"
#include "rca/kgraph/graph.hpp"
#include "rca/kgraph/paths.hpp"

namespace rca::toolbox {

inline constexpr std::string_view kCheckNodeExistence = "check_node_existence";
inline constexpr std::string_view kGetNodeAttributes = "get_node_attributes";
inline constexpr std::string_view kGetAllInstancesOfEntityType = "get_all_instances_of_entity_type";
inline constexpr std::string_view kGetEdgeAttributes = "get_edge_attributes";
inline constexpr std::string_view kGetNodeNeighborhood = "get_node_neighborhood";
inline constexpr std::string_view kGetAllSimplePaths = "get_all_simple_paths";

/// Tool names in declaration order.
const std::vector<std::string>& tool_names();

struct ToolCall {
  std::string tool_name;
  /// Tool arguments without "reasoning".
  nlohmann::json args = nlohmann::json::object();
  std::string reasoning;

  bool operator==(const ToolCall&) const = default;
};

/// Splits a model-supplied argument object into args and reasoning. A
/// non-object yields a call whose args are the raw value, which dispatch
/// rejects as BAD_ARGS.
ToolCall make_tool_call(std::string name, const nlohmann::json& arguments);

enum class ToolErrorKind { UnknownEntity, UnknownType, BadArgs, MissingReasoning };

std::string_view to_string(ToolErrorKind kind);
ToolErrorKind parse_tool_error_kind(std::string_view text);

struct ToolResult {
  bool ok = false;
  std::string rendered;
  std::optional<ToolErrorKind> error_kind;

  static ToolResult success(std::string text) { return {true, std::move(text), std::nullopt}; }
  static ToolResult failure(ToolErrorKind kind, std::string text) { return {false, std::move(text), kind}; }

  bool operator==(const ToolResult&) const = default;
};

struct ToolboxOptions {
  /// Lists longer than this are cut with an explicit marker line.
  std::size_t max_items = 100;
  std::size_t max_path_length = kgraph::kDefaultMaxPathLength;
};

/// Executes one call. Never throws for bad input; failures come back as
/// results with an error kind. Missing reasoning is rejected before the
/// arguments are looked at.
ToolResult dispatch(const kgraph::KnowledgeGraph& graph, const std::vector<alerts::Alert>& alerts, const ToolCall& call,
                    const ToolboxOptions& options = {});

/// Chat-completions style declarations
/// ({"type":"function","function":{"name","description","parameters"}}),
/// one per tool in tool_names() order, each requiring "reasoning".
nlohmann::json tool_schemas();

struct ToolLogEntry {
  ToolCall call;
  ToolResult result;
};

/// Dispatch bound to one scenario, recording every call in order.
class Toolbox {
 public:
  Toolbox(const kgraph::KnowledgeGraph& graph, const std::vector<alerts::Alert>& alerts, ToolboxOptions options = {})
      : graph_(graph), alerts_(alerts), options_(options) {}

  ToolResult call(const ToolCall& call);
  const std::vector<ToolLogEntry>& log() const { return log_; }

 private:
  const kgraph::KnowledgeGraph& graph_;
  const std::vector<alerts::Alert>& alerts_;
  ToolboxOptions options_;
  std::vector<ToolLogEntry> log_;
};

}  // namespace rca::toolbox
