// SPDX-License-Identifier: Apache-2.0
#include "rca/kgraph/render.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rca::kgraph {
namespace {

constexpr std::string_view kNodesHeader = "Nodes:";
constexpr std::string_view kEdgesHeader = "Edges:";

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
  return out;
}

std::string attributes_suffix(const Attributes& attrs) {
  if (attrs.empty()) return {};
  nlohmann::json j(attrs);
  return " " + j.dump();
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw ParseError("<kg rendering>", line, message);
}

Attributes parse_attributes(std::string_view text, std::size_t line) {
  Attributes attrs;
  if (text.empty()) return attrs;
  try {
    auto j = nlohmann::json::parse(text);
    for (const auto& [k, v] : j.items()) {
      if (!v.is_string()) fail(line, "attribute '" + k + "' is not a string");
      attrs[k] = v.get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    fail(line, std::string("malformed attribute object: ") + e.what());
  }
  return attrs;
}

Entity parse_node_line(std::string_view body, std::size_t line) {
  // name (Type) {attrs}
  const auto open = body.find(" (");
  if (open == std::string_view::npos) fail(line, "node bullet lacks ' (Type)'");
  const auto close = body.find(')', open);
  if (close == std::string_view::npos) fail(line, "node bullet lacks closing ')'");
  Entity e;
  e.name = std::string(body.substr(0, open));
  e.type = std::string(body.substr(open + 2, close - open - 2));
  auto rest = body.substr(close + 1);
  if (!rest.empty()) {
    if (rest.front() != ' ') fail(line, "unexpected text after node type");
    rest.remove_prefix(1);
  }
  e.attributes = parse_attributes(rest, line);
  return e;
}

Relationship parse_edge_line(std::string_view body, std::size_t line) {
  // src --(rel)--> dst {attrs}
  const auto open = body.find(" --(");
  if (open == std::string_view::npos) fail(line, "edge bullet lacks ' --('");
  const auto close = body.find(")--> ", open);
  if (close == std::string_view::npos) fail(line, "edge bullet lacks ')--> '");
  Relationship r;
  r.source = std::string(body.substr(0, open));
  r.type = std::string(body.substr(open + 4, close - open - 4));
  auto rest = body.substr(close + 5);
  const auto space = rest.find(' ');
  r.target = std::string(rest.substr(0, space));
  if (space != std::string_view::npos) r.attributes = parse_attributes(rest.substr(space + 1), line);
  return r;
}

}  // namespace

std::string to_string(KgRepresentation r) { return r == KgRepresentation::List ? "LIST" : "JSON_OBJECT"; }

KgRepresentation parse_kg_representation(std::string_view text) {
  const auto u = upper(text);
  if (u == "LIST") return KgRepresentation::List;
  if (u == "JSON_OBJECT" || u == "JSON") return KgRepresentation::JsonObject;
  throw ValidationError("unknown KG representation '" + std::string(text) + "'");
}

std::string render_node_line(const Entity& e) {
  return "- " + e.name + " (" + e.type + ")" + attributes_suffix(e.attributes);
}

std::string render_edge_line(const Relationship& r) {
  return "- " + r.source + " --(" + r.type + ")--> " + r.target + attributes_suffix(r.attributes);
}

std::string render_kg(const KnowledgeGraph& graph, KgRepresentation representation) {
  if (representation == KgRepresentation::JsonObject) {
    auto doc = to_json(graph);
    doc.erase("schema");
    return doc.dump(2);
  }
  std::string out;
  out += kNodesHeader;
  out += '\n';
  for (const auto& e : graph.entities()) out += render_node_line(e) + '\n';
  out += kEdgesHeader;
  out += '\n';
  for (const auto& r : graph.relationships()) out += render_edge_line(r) + '\n';
  return out;
}

KnowledgeGraph parse_kg_rendering(std::string_view text, KgRepresentation representation,
                                  const EntitySchema& schema) {
  if (representation == KgRepresentation::JsonObject) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      fail(1, std::string("malformed JSON rendering: ") + e.what());
    }
    return kg_from_json(doc, schema);
  }

  enum class Section { None, Nodes, Edges } section = Section::None;
  std::vector<Entity> entities;
  std::vector<Relationship> relationships;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view l(raw);
    if (l.empty()) continue;
    if (l == kNodesHeader) {
      section = Section::Nodes;
      continue;
    }
    if (l == kEdgesHeader) {
      section = Section::Edges;
      continue;
    }
    if (!l.starts_with("- ")) fail(line, "expected a bullet line");
    l.remove_prefix(2);
    switch (section) {
      case Section::Nodes:
        entities.push_back(parse_node_line(l, line));
        break;
      case Section::Edges:
        relationships.push_back(parse_edge_line(l, line));
        break;
      case Section::None:
        fail(line, "bullet before any section header");
    }
  }
  return KnowledgeGraph::build(schema, std::move(entities), std::move(relationships));
}

std::string render_entity_types(const EntitySchema& schema) {
  std::string out;
  for (const auto& t : schema.entity_types) {
    out += "- " + t.name;
    if (!t.description.empty()) out += ": " + t.description;
    if (!t.fault_types.empty()) {
      out += " (fault types: ";
      for (std::size_t i = 0; i < t.fault_types.size(); ++i) {
        if (i > 0) out += ", ";
        out += t.fault_types[i];
      }
      out += ")";
    }
    out += '\n';
  }
  return out;
}

std::string render_relationship_types(const EntitySchema& schema) {
  std::string out;
  for (const auto& t : schema.relationship_types) {
    out += "- " + t.name;
    if (!t.source_type.empty() || !t.target_type.empty()) {
      out += " (" + (t.source_type.empty() ? std::string("*") : t.source_type) + " -> " +
             (t.target_type.empty() ? std::string("*") : t.target_type) + ")";
    }
    if (!t.description.empty()) out += ": " + t.description;
    out += '\n';
  }
  return out;
}

}  // namespace rca::kgraph
