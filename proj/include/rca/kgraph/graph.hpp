// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rca/common/error.hpp"

namespace rca::kgraph {

/// Raised by graph queries given a name that is not in the graph.
class UnknownEntityError : public Error {
 public:
  explicit UnknownEntityError(const std::string& name) : Error("unknown entity '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

struct EntityType {
  std::string name;
  std::string description;
  /// Fault classes that may be injected into entities of this type. May be
  /// empty.
  std::vector<std::string> fault_types;

  bool operator==(const EntityType&) const = default;
};

struct RelationshipType {
  std::string name;
  std::string description;
  /// Endpoint entity types, informational ("" when unconstrained).
  std::string source_type;
  std::string target_type;

  bool operator==(const RelationshipType&) const = default;
};

struct EntitySchema {
  std::vector<EntityType> entity_types;
  std::vector<RelationshipType> relationship_types;

  const EntityType* find_entity_type(std::string_view name) const;
  const RelationshipType* find_relationship_type(std::string_view name) const;
  /// Entity types with a non-empty fault class set, in declaration order.
  std::vector<std::string> fault_entity_types() const;
  /// Union of all fault classes, in first-declared order.
  std::vector<std::string> all_fault_types() const;
  /// Case-insensitive membership of `fault` in the fault classes of `type`.
  bool allows_fault(std::string_view type, std::string_view fault) const;

  bool operator==(const EntitySchema&) const = default;
};

/// Throws ValidationError on duplicate type names.
EntitySchema schema_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EntitySchema& schema);

using Attributes = std::map<std::string, std::string>;

struct Entity {
  std::string name;
  std::string type;
  Attributes attributes;

  bool operator==(const Entity&) const = default;
};

struct Relationship {
  std::string source;
  std::string type;
  std::string target;
  Attributes attributes;

  bool operator==(const Relationship&) const = default;
};

/// Immutable typed graph. Entities are kept sorted by name and relationships
/// by (source, type, target), so equality and every rendering are independent
/// of input order.
class KnowledgeGraph {
 public:
  /// Validates against the schema: unique entity names, declared entity and
  /// relationship types, existing endpoints, no duplicate (source, type,
  /// target) triple, and names free of whitespace and parentheses. Throws
  /// ValidationError naming the offending node or edge.
  static KnowledgeGraph build(EntitySchema schema, std::vector<Entity> entities,
                              std::vector<Relationship> relationships);

  const EntitySchema& schema() const { return schema_; }
  const std::vector<Entity>& entities() const { return entities_; }
  const std::vector<Relationship>& relationships() const { return relationships_; }

  const Entity* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  bool has_edge(std::string_view source, std::string_view type, std::string_view target) const;
  /// Relationships between `a` and `b` in either direction, in canonical order.
  std::vector<const Relationship*> edges_between(std::string_view a, std::string_view b) const;
  /// Indices into relationships() leaving / entering the entity at `index`,
  /// ordered by (other endpoint, type).
  const std::vector<std::size_t>& out_edges(std::size_t index) const { return out_[index]; }
  const std::vector<std::size_t>& in_edges(std::size_t index) const { return in_[index]; }
  /// Names of entities of `type`, sorted.
  std::vector<std::string> instances_of(std::string_view type) const;

  bool operator==(const KnowledgeGraph& other) const {
    return schema_ == other.schema_ && entities_ == other.entities_ && relationships_ == other.relationships_;
  }

 private:
  EntitySchema schema_;
  std::vector<Entity> entities_;
  std::vector<Relationship> relationships_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// Document layout: `{"schema": {...}, "nodes": [...], "edges": [...]}`.
/// When `schema` is given it replaces any schema embedded in the document.
KnowledgeGraph kg_from_json(const nlohmann::json& doc, const std::optional<EntitySchema>& schema = std::nullopt);
nlohmann::json to_json(const KnowledgeGraph& graph);

KnowledgeGraph load_kg(const std::filesystem::path& path, const std::optional<EntitySchema>& schema = std::nullopt);

}  // namespace rca::kgraph
