// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "rca/kgraph/graph.hpp"

namespace rca::kgraph {

enum class KgRepresentation { List, JsonObject };

std::string to_string(KgRepresentation r);
/// Accepts "LIST" / "JSON_OBJECT" (case-insensitive); throws ValidationError.
KgRepresentation parse_kg_representation(std::string_view text);

/// LIST:
///   Nodes:
///   - name (Type) {"attr":"value"}
///   Edges:
///   - src --(rel)--> dst {"attr":"value"}
/// The attribute object is omitted when empty. JSON_OBJECT is the nodes and
/// edges arrays of to_json() pretty-printed with two-space indent.
std::string render_kg(const KnowledgeGraph& graph, KgRepresentation representation);

/// Inverse of render_kg. The schema is not part of either rendering and must
/// be supplied. Throws ParseError on malformed text.
KnowledgeGraph parse_kg_rendering(std::string_view text, KgRepresentation representation,
                                  const EntitySchema& schema);

/// Bullet lists of entity types (with fault classes) and relationship types,
/// as they appear in prompts.
std::string render_entity_types(const EntitySchema& schema);
std::string render_relationship_types(const EntitySchema& schema);

/// Bullet rendering of an arbitrary node and edge subset, same line format as
/// the LIST representation.
std::string render_node_line(const Entity& entity);
std::string render_edge_line(const Relationship& relationship);

}  // namespace rca::kgraph
