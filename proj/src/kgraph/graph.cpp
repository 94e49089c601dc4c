// SPDX-License-Identifier: Apache-2.0
#include "rca/kgraph/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <tuple>

namespace rca::kgraph {
namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

void check_identifier(std::string_view what, const std::string& name) {
  if (name.empty()) throw ValidationError(std::string(what) + " name must be non-empty");
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')') {
      throw ValidationError(std::string(what) + " name '" + name + "' must not contain whitespace or parentheses");
    }
  }
}

std::string edge_label(const Relationship& r) { return r.source + " --(" + r.type + ")--> " + r.target; }

Attributes attributes_from_json(const nlohmann::json& j) {
  Attributes attrs;
  if (j.is_null()) return attrs;
  if (!j.is_object()) throw ValidationError("attributes must be an object");
  for (const auto& [key, value] : j.items()) {
    attrs[key] = value.is_string() ? value.get<std::string>() : value.dump();
  }
  return attrs;
}

}  // namespace

const EntityType* EntitySchema::find_entity_type(std::string_view name) const {
  for (const auto& t : entity_types) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

const RelationshipType* EntitySchema::find_relationship_type(std::string_view name) const {
  for (const auto& t : relationship_types) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

std::vector<std::string> EntitySchema::fault_entity_types() const {
  std::vector<std::string> out;
  for (const auto& t : entity_types) {
    if (!t.fault_types.empty()) out.push_back(t.name);
  }
  return out;
}

std::vector<std::string> EntitySchema::all_fault_types() const {
  std::vector<std::string> out;
  for (const auto& t : entity_types) {
    for (const auto& f : t.fault_types) {
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
  }
  return out;
}

bool EntitySchema::allows_fault(std::string_view type, std::string_view fault) const {
  const auto* t = find_entity_type(type);
  if (t == nullptr) return false;
  return std::any_of(t->fault_types.begin(), t->fault_types.end(),
                     [&](const std::string& f) { return iequals(f, fault); });
}

EntitySchema schema_from_json(const nlohmann::json& j) {
  EntitySchema schema;
  std::set<std::string> seen;
  for (const auto& e : j.at("entity_types")) {
    EntityType t;
    t.name = e.at("name").get<std::string>();
    check_identifier("entity type", t.name);
    t.description = e.value("description", std::string());
    t.fault_types = e.value("fault_types", std::vector<std::string>{});
    if (!seen.insert(t.name).second) throw ValidationError("duplicate entity type '" + t.name + "'");
    schema.entity_types.push_back(std::move(t));
  }
  seen.clear();
  for (const auto& r : j.at("relationship_types")) {
    RelationshipType t;
    t.name = r.at("name").get<std::string>();
    check_identifier("relationship type", t.name);
    t.description = r.value("description", std::string());
    t.source_type = r.value("source", std::string());
    t.target_type = r.value("target", std::string());
    if (!seen.insert(t.name).second) throw ValidationError("duplicate relationship type '" + t.name + "'");
    schema.relationship_types.push_back(std::move(t));
  }
  return schema;
}

nlohmann::json to_json(const EntitySchema& schema) {
  nlohmann::json j;
  j["entity_types"] = nlohmann::json::array();
  for (const auto& t : schema.entity_types) {
    j["entity_types"].push_back(
        {{"name", t.name}, {"description", t.description}, {"fault_types", t.fault_types}});
  }
  j["relationship_types"] = nlohmann::json::array();
  for (const auto& t : schema.relationship_types) {
    j["relationship_types"].push_back(
        {{"name", t.name}, {"description", t.description}, {"source", t.source_type}, {"target", t.target_type}});
  }
  return j;
}

KnowledgeGraph KnowledgeGraph::build(EntitySchema schema, std::vector<Entity> entities,
                                     std::vector<Relationship> relationships) {
  KnowledgeGraph g;
  g.schema_ = std::move(schema);

  std::sort(entities.begin(), entities.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const auto& e = entities[i];
    check_identifier("entity", e.name);
    if (g.schema_.find_entity_type(e.type) == nullptr) {
      throw ValidationError("entity '" + e.name + "' has undeclared type '" + e.type + "'");
    }
    if (!g.by_name_.emplace(e.name, i).second) throw ValidationError("duplicate entity name '" + e.name + "'");
  }
  g.entities_ = std::move(entities);

  auto key = [](const Relationship& r) { return std::tie(r.source, r.type, r.target); };
  std::sort(relationships.begin(), relationships.end(),
            [&](const auto& a, const auto& b) { return key(a) < key(b); });
  for (std::size_t i = 0; i < relationships.size(); ++i) {
    const auto& r = relationships[i];
    if (g.schema_.find_relationship_type(r.type) == nullptr) {
      throw ValidationError("edge " + edge_label(r) + " has undeclared relationship type '" + r.type + "'");
    }
    if (!g.contains(r.source)) throw ValidationError("edge " + edge_label(r) + " references unknown node '" + r.source + "'");
    if (!g.contains(r.target)) throw ValidationError("edge " + edge_label(r) + " references unknown node '" + r.target + "'");
    if (i > 0 && key(relationships[i - 1]) == key(r)) throw ValidationError("duplicate edge " + edge_label(r));
  }
  g.relationships_ = std::move(relationships);

  g.out_.assign(g.entities_.size(), {});
  g.in_.assign(g.entities_.size(), {});
  for (std::size_t i = 0; i < g.relationships_.size(); ++i) {
    const auto& r = g.relationships_[i];
    g.out_[*g.index_of(r.source)].push_back(i);
    g.in_[*g.index_of(r.target)].push_back(i);
  }
  const auto& rels = g.relationships_;
  for (auto& edges : g.out_) {
    std::sort(edges.begin(), edges.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(rels[a].target, rels[a].type) < std::tie(rels[b].target, rels[b].type);
    });
  }
  for (auto& edges : g.in_) {
    std::sort(edges.begin(), edges.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(rels[a].source, rels[a].type) < std::tie(rels[b].source, rels[b].type);
    });
  }
  return g;
}

const Entity* KnowledgeGraph::find(std::string_view name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &entities_[it->second];
}

std::optional<std::size_t> KnowledgeGraph::index_of(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

bool KnowledgeGraph::has_edge(std::string_view source, std::string_view type, std::string_view target) const {
  const auto idx = index_of(source);
  if (!idx) return false;
  return std::any_of(out_[*idx].begin(), out_[*idx].end(), [&](std::size_t e) {
    return relationships_[e].type == type && relationships_[e].target == target;
  });
}

std::vector<const Relationship*> KnowledgeGraph::edges_between(std::string_view a, std::string_view b) const {
  std::vector<const Relationship*> out;
  for (const auto& r : relationships_) {
    if ((r.source == a && r.target == b) || (r.source == b && r.target == a)) out.push_back(&r);
  }
  return out;
}

std::vector<std::string> KnowledgeGraph::instances_of(std::string_view type) const {
  std::vector<std::string> out;
  for (const auto& e : entities_) {
    if (e.type == type) out.push_back(e.name);
  }
  return out;
}

KnowledgeGraph kg_from_json(const nlohmann::json& doc, const std::optional<EntitySchema>& schema) {
  EntitySchema s;
  if (schema) {
    s = *schema;
  } else if (doc.contains("schema")) {
    s = schema_from_json(doc.at("schema"));
  } else {
    throw ValidationError("knowledge graph document has no schema");
  }
  std::vector<Entity> entities;
  for (const auto& n : doc.at("nodes")) {
    entities.push_back({n.at("name").get<std::string>(), n.at("type").get<std::string>(),
                        attributes_from_json(n.value("attributes", nlohmann::json::object()))});
  }
  std::vector<Relationship> relationships;
  for (const auto& e : doc.at("edges")) {
    relationships.push_back({e.at("source").get<std::string>(), e.at("type").get<std::string>(),
                             e.at("target").get<std::string>(),
                             attributes_from_json(e.value("attributes", nlohmann::json::object()))});
  }
  return KnowledgeGraph::build(std::move(s), std::move(entities), std::move(relationships));
}

nlohmann::json to_json(const KnowledgeGraph& graph) {
  nlohmann::json doc;
  doc["schema"] = to_json(graph.schema());
  doc["nodes"] = nlohmann::json::array();
  for (const auto& e : graph.entities()) {
    doc["nodes"].push_back({{"name", e.name}, {"type", e.type}, {"attributes", e.attributes}});
  }
  doc["edges"] = nlohmann::json::array();
  for (const auto& r : graph.relationships()) {
    doc["edges"].push_back(
        {{"source", r.source}, {"type", r.type}, {"target", r.target}, {"attributes", r.attributes}});
  }
  return doc;
}

KnowledgeGraph load_kg(const std::filesystem::path& path, const std::optional<EntitySchema>& schema) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open knowledge graph file " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": malformed knowledge graph document: " + e.what());
  }
  try {
    return kg_from_json(doc, schema);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

}  // namespace rca::kgraph
