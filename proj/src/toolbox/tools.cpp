// SPDX-License-Identifier: Apache-2.0
#include "rca/toolbox/tools.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "rca/common/error.hpp"
#include "rca/kgraph/render.hpp"

namespace rca::toolbox {
namespace {

using nlohmann::json;

struct BadArgs {
  std::string message;
};

struct UnknownType {
  std::string name;
};

struct ParamSpec {
  std::string name;
  std::string type;  // "string" or "integer"
  std::string description;
};

struct ToolSpec {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
};

const std::vector<ToolSpec>& specs() {
  static const std::vector<ToolSpec> kSpecs = {
      {std::string(kCheckNodeExistence), "Check if a named entity exists in the knowledge graph.",
       {{"node", "string", "Name of the entity."}}},
      {std::string(kGetNodeAttributes), "Retrieve attributes and alert data of a given entity.",
       {{"node", "string", "Name of the entity."}}},
      {std::string(kGetAllInstancesOfEntityType), "Enumerate all instances of a specified entity type.",
       {{"type", "string", "Entity type name from the schema."}}},
      {std::string(kGetEdgeAttributes), "Inspect properties of edges between two entities.",
       {{"node1", "string", "Name of the first entity."}, {"node2", "string", "Name of the second entity."}}},
      {std::string(kGetNodeNeighborhood), "Retrieve the r-hop neighborhood of a given entity.",
       {{"node", "string", "Name of the entity."},
        {"r", "integer", "Number of hops (at least 1); edge direction is ignored."}}},
      {std::string(kGetAllSimplePaths), "Enumerate all simple paths between two entities.",
       {{"source", "string", "Name of the start entity."}, {"target", "string", "Name of the end entity."}}},
  };
  return kSpecs;
}

const ToolSpec* find_spec(std::string_view name) {
  for (const auto& s : specs()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string string_arg(const json& args, const std::string& name) {
  const auto it = args.find(name);
  if (it == args.end()) throw BadArgs{"missing argument '" + name + "'"};
  if (!it->is_string()) throw BadArgs{"argument '" + name + "' must be a string"};
  return it->get<std::string>();
}

long long integer_arg(const json& args, const std::string& name) {
  const auto it = args.find(name);
  if (it == args.end()) throw BadArgs{"missing argument '" + name + "'"};
  if (it->is_number_integer()) return it->get<long long>();
  if (it->is_number_float()) {
    const double d = it->get<double>();
    if (d == static_cast<double>(static_cast<long long>(d))) return static_cast<long long>(d);
  }
  if (it->is_string()) {
    const auto s = it->get<std::string>();
    try {
      std::size_t used = 0;
      const auto v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw BadArgs{"argument '" + name + "' must be an integer"};
}

/// Appends the lines, cut at `max_items` with a marker.
void append_limited(std::string& out, const std::vector<std::string>& lines, std::size_t max_items) {
  const auto shown = std::min(lines.size(), max_items);
  for (std::size_t i = 0; i < shown; ++i) out += lines[i] + '\n';
  if (lines.size() > shown) {
    out += "... [truncated: " + std::to_string(lines.size() - shown) + " more of " + std::to_string(lines.size()) +
           " items]\n";
  }
}

void require_entity(const kgraph::KnowledgeGraph& graph, const std::string& name) {
  if (!graph.contains(name)) throw kgraph::UnknownEntityError(name);
}

std::string check_node_existence(const kgraph::KnowledgeGraph& graph, const json& args) {
  const auto node = string_arg(args, "node");
  return graph.contains(node) ? "exists: true" : "exists: false";
}

std::string get_node_attributes(const kgraph::KnowledgeGraph& graph, const std::vector<alerts::Alert>& alerts,
                                const json& args, const ToolboxOptions& opt) {
  const auto node = string_arg(args, "node");
  const auto* e = graph.find(node);
  if (e == nullptr) throw kgraph::UnknownEntityError(node);
  std::string out = "name: " + e->name + "\ntype: " + e->type + "\nattributes:";
  if (e->attributes.empty()) {
    out += " none\n";
  } else {
    out += '\n';
    std::vector<std::string> lines;
    for (const auto& [k, v] : e->attributes) lines.push_back("- " + k + ": " + v);
    append_limited(out, lines, opt.max_items);
  }
  const auto attached = alerts::alerts_for_entity(alerts, node);
  out += "alerts:";
  if (attached.empty()) {
    out += " none\n";
  } else {
    out += '\n';
    std::vector<std::string> lines;
    for (const auto* a : attached) lines.push_back("- " + alerts::render_alert_line(*a));
    append_limited(out, lines, opt.max_items);
  }
  return out;
}

std::string get_all_instances(const kgraph::KnowledgeGraph& graph, const json& args, const ToolboxOptions& opt) {
  const auto type = string_arg(args, "type");
  if (graph.schema().find_entity_type(type) == nullptr) throw UnknownType{type};
  const auto names = graph.instances_of(type);
  if (names.empty()) return "No instances of type " + type + ".\n";
  std::vector<std::string> lines;
  for (const auto& n : names) lines.push_back("- " + n);
  std::string out = "Instances of " + type + ":\n";
  append_limited(out, lines, opt.max_items);
  return out;
}

std::string get_edge_attributes(const kgraph::KnowledgeGraph& graph, const json& args, const ToolboxOptions& opt) {
  const auto a = string_arg(args, "node1");
  const auto b = string_arg(args, "node2");
  require_entity(graph, a);
  require_entity(graph, b);
  const auto edges = graph.edges_between(a, b);
  if (edges.empty()) return "No edges between " + a + " and " + b + ".\n";
  std::vector<std::string> lines;
  for (const auto* r : edges) lines.push_back(kgraph::render_edge_line(*r));
  std::string out;
  append_limited(out, lines, opt.max_items);
  return out;
}

std::string get_node_neighborhood(const kgraph::KnowledgeGraph& graph, const json& args, const ToolboxOptions& opt) {
  const auto node = string_arg(args, "node");
  const auto r = integer_arg(args, "r");
  require_entity(graph, node);
  if (r < 1) throw BadArgs{"argument 'r' must be at least 1"};
  const auto sub = kgraph::r_hop_neighborhood(graph, node, static_cast<int>(std::min<long long>(r, 1 << 20)));
  std::vector<std::string> nodes;
  for (const auto& n : sub.nodes) nodes.push_back(kgraph::render_node_line(*graph.find(n)));
  std::vector<std::string> edges;
  for (const auto& e : sub.edges) edges.push_back(kgraph::render_edge_line(e));
  std::string out = "Nodes:\n";
  append_limited(out, nodes, opt.max_items);
  out += "Edges:\n";
  append_limited(out, edges, opt.max_items);
  return out;
}

std::string get_all_simple_paths(const kgraph::KnowledgeGraph& graph, const json& args, const ToolboxOptions& opt) {
  const auto source = string_arg(args, "source");
  const auto target = string_arg(args, "target");
  const auto paths = kgraph::all_simple_paths(graph, source, target, opt.max_path_length);
  if (paths.empty()) return "No paths from " + source + " to " + target + ".\n";
  std::vector<std::string> lines;
  for (const auto& p : paths) lines.push_back("- " + kgraph::format_path(p));
  std::string out;
  append_limited(out, lines, opt.max_items);
  return out;
}

}  // namespace

const std::vector<std::string>& tool_names() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names;
    for (const auto& s : specs()) names.push_back(s.name);
    return names;
  }();
  return kNames;
}

ToolCall make_tool_call(std::string name, const nlohmann::json& arguments) {
  ToolCall call;
  call.tool_name = std::move(name);
  if (!arguments.is_object()) {
    call.args = arguments;
    return call;
  }
  call.args = arguments;
  if (auto it = call.args.find("reasoning"); it != call.args.end()) {
    if (it->is_string()) call.reasoning = it->get<std::string>();
    call.args.erase(it);
  }
  return call;
}

std::string_view to_string(ToolErrorKind kind) {
  switch (kind) {
    case ToolErrorKind::UnknownEntity:
      return "UNKNOWN_ENTITY";
    case ToolErrorKind::UnknownType:
      return "UNKNOWN_TYPE";
    case ToolErrorKind::BadArgs:
      return "BAD_ARGS";
    case ToolErrorKind::MissingReasoning:
      return "MISSING_REASONING";
  }
  return "?";
}

ToolErrorKind parse_tool_error_kind(std::string_view text) {
  for (auto k : {ToolErrorKind::UnknownEntity, ToolErrorKind::UnknownType, ToolErrorKind::BadArgs,
                 ToolErrorKind::MissingReasoning}) {
    if (to_string(k) == text) return k;
  }
  throw ValidationError("unknown tool error kind '" + std::string(text) + "'");
}

ToolResult dispatch(const kgraph::KnowledgeGraph& graph, const std::vector<alerts::Alert>& alerts, const ToolCall& call,
                    const ToolboxOptions& options) {
  if (blank(call.reasoning)) {
    return ToolResult::failure(ToolErrorKind::MissingReasoning,
                               "Error: the required 'reasoning' argument is missing or empty.");
  }
  const auto* spec = find_spec(call.tool_name);
  if (spec == nullptr) {
    return ToolResult::failure(ToolErrorKind::BadArgs, "Error: unknown tool '" + call.tool_name + "'.");
  }
  if (!call.args.is_object()) {
    return ToolResult::failure(ToolErrorKind::BadArgs, "Error: tool arguments must be a JSON object.");
  }
  for (const auto& [key, _] : call.args.items()) {
    const bool declared = std::any_of(spec->params.begin(), spec->params.end(),
                                      [&](const ParamSpec& p) { return p.name == key; });
    if (!declared) {
      return ToolResult::failure(ToolErrorKind::BadArgs,
                                 "Error: unexpected argument '" + key + "' for " + call.tool_name + ".");
    }
  }
  try {
    const auto& a = call.args;
    if (call.tool_name == kCheckNodeExistence) return ToolResult::success(check_node_existence(graph, a));
    if (call.tool_name == kGetNodeAttributes) return ToolResult::success(get_node_attributes(graph, alerts, a, options));
    if (call.tool_name == kGetAllInstancesOfEntityType) return ToolResult::success(get_all_instances(graph, a, options));
    if (call.tool_name == kGetEdgeAttributes) return ToolResult::success(get_edge_attributes(graph, a, options));
    if (call.tool_name == kGetNodeNeighborhood) return ToolResult::success(get_node_neighborhood(graph, a, options));
    return ToolResult::success(get_all_simple_paths(graph, a, options));
  } catch (const BadArgs& e) {
    return ToolResult::failure(ToolErrorKind::BadArgs, "Error: " + e.message + ".");
  } catch (const kgraph::UnknownEntityError& e) {
    return ToolResult::failure(ToolErrorKind::UnknownEntity,
                               "Error: entity '" + e.name() + "' does not exist in the knowledge graph.");
  } catch (const UnknownType& e) {
    return ToolResult::failure(ToolErrorKind::UnknownType,
                               "Error: entity type '" + e.name + "' is not defined in the schema.");
  }
}

nlohmann::json tool_schemas() {
  json out = json::array();
  for (const auto& s : specs()) {
    json properties = json::object();
    json required = json::array();
    for (const auto& p : s.params) {
      properties[p.name] = {{"type", p.type}, {"description", p.description}};
      required.push_back(p.name);
    }
    properties["reasoning"] = {{"type", "string"}, {"description", "Why this tool is being called at this point."}};
    required.push_back("reasoning");
    out.push_back({{"type", "function"},
                   {"function",
                    {{"name", s.name},
                     {"description", s.description},
                     {"parameters", {{"type", "object"}, {"properties", properties}, {"required", required}}}}}});
  }
  return out;
}

ToolResult Toolbox::call(const ToolCall& call) {
  auto result = dispatch(graph_, alerts_, call, options_);
  log_.push_back({call, result});
  return result;
}

}  // namespace rca::toolbox
