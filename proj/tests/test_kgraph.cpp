// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "rca/common/error.hpp"
#include "rca/harness/config.hpp"
#include "rca/kgraph/graph.hpp"
#include "rca/kgraph/paths.hpp"
#include "rca/kgraph/render.hpp"
#include "support.hpp"

namespace rca::kgraph {
namespace {

EntitySchema small_schema() {
  EntitySchema s;
  s.entity_types = {{"Service", "A logical service", {"high memory usage", "session timeout"}},
                    {"Host", "A machine", {"node cpu load"}},
                    {"Cache", "", {}}};
  s.relationship_types = {{"calls", "", "Service", "Service"},
                          {"hosted_on", "", "Service", "Host"},
                          {"data_flow", "", "Service", "Cache"}};
  return s;
}

KnowledgeGraph small_graph() {
  return KnowledgeGraph::build(small_schema(),
                               {{"c", "Service", {}},
                                {"a", "Service", {{"port", "80"}}},
                                {"b", "Service", {}},
                                {"h1", "Host", {}},
                                {"redis", "Cache", {}}},
                               {{"b", "calls", "c", {}},
                                {"a", "calls", "b", {}},
                                {"a", "calls", "c", {}},
                                {"a", "hosted_on", "h1", {}},
                                {"b", "hosted_on", "h1", {}},
                                {"c", "data_flow", "redis", {{"protocol", "resp"}}},
                                {"a", "data_flow", "b", {}}});
}

PropagationPath path_of(std::initializer_list<PathStep> steps) { return {steps}; }

TEST(Graph, BuildCanonicalisesOrder) {
  const auto g = small_graph();
  EXPECT_EQ(g.entities().front().name, "a");
  EXPECT_EQ(g.relationships().front().source, "a");
  EXPECT_TRUE(g.has_edge("a", "calls", "b"));
  EXPECT_FALSE(g.has_edge("b", "calls", "a"));
  EXPECT_EQ(g.instances_of("Service"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(g.edges_between("b", "a").size(), 2u);
}

TEST(Graph, RejectsInvalidInput) {
  const auto s = small_schema();
  EXPECT_THROW(KnowledgeGraph::build(s, {{"a", "Service", {}}, {"a", "Host", {}}}, {}), ValidationError);
  EXPECT_THROW(KnowledgeGraph::build(s, {{"a", "Queue", {}}}, {}), ValidationError);
  EXPECT_THROW(KnowledgeGraph::build(s, {{"a", "Service", {}}}, {{"a", "calls", "z", {}}}), ValidationError);
  EXPECT_THROW(KnowledgeGraph::build(s, {{"a", "Service", {}}, {"b", "Service", {}}},
                                     {{"a", "pings", "b", {}}}),
               ValidationError);
  EXPECT_THROW(KnowledgeGraph::build(s, {{"a", "Service", {}}, {"b", "Service", {}}},
                                     {{"a", "calls", "b", {}}, {"a", "calls", "b", {}}}),
               ValidationError);
  EXPECT_THROW(KnowledgeGraph::build(s, {{"my svc", "Service", {}}}, {}), ValidationError);
  EXPECT_THROW(KnowledgeGraph::build(s, {{"svc(1)", "Service", {}}}, {}), ValidationError);
}

TEST(Graph, SchemaFaultLookups) {
  const auto s = small_schema();
  EXPECT_EQ(s.fault_entity_types(), (std::vector<std::string>{"Service", "Host"}));
  EXPECT_EQ(s.all_fault_types().size(), 3u);
  EXPECT_TRUE(s.allows_fault("Service", "High Memory Usage"));
  EXPECT_FALSE(s.allows_fault("Host", "session timeout"));
}

TEST(Graph, JsonRoundTrip) {
  const auto g = small_graph();
  EXPECT_EQ(kg_from_json(to_json(g)), g);
  EXPECT_EQ(schema_from_json(to_json(g.schema())), g.schema());
}

TEST(Render, BothRepresentationsRoundTrip) {
  const auto g = small_graph();
  for (const auto r : {KgRepresentation::List, KgRepresentation::JsonObject}) {
    EXPECT_EQ(parse_kg_rendering(render_kg(g, r), r, g.schema()), g) << to_string(r);
  }
}

TEST(Render, ListFormat) {
  const auto text = render_kg(small_graph(), KgRepresentation::List);
  EXPECT_EQ(text.rfind("Nodes:\n- a (Service) {\"port\":\"80\"}\n", 0), 0u) << text;
  EXPECT_NE(text.find("\nEdges:\n"), std::string::npos);
  EXPECT_NE(text.find("- a --(calls)--> b\n"), std::string::npos);
  EXPECT_NE(text.find("- c --(data_flow)--> redis {\"protocol\":\"resp\"}"), std::string::npos);
}

TEST(Render, RepresentationNames) {
  EXPECT_EQ(parse_kg_representation("json_object"), KgRepresentation::JsonObject);
  EXPECT_EQ(parse_kg_representation("LIST"), KgRepresentation::List);
  EXPECT_THROW(parse_kg_representation("yaml"), ValidationError);
}

TEST(Render, MalformedListThrows) {
  EXPECT_THROW(parse_kg_rendering("Nodes:\n- a Service\nEdges:\n", KgRepresentation::List, small_schema()),
               ParseError);
}

TEST(Render, FixtureGraphRoundTrips) {
  const auto config = test::fixture_config(test::scratch_dir("kg_fixture"));
  const auto g = harness::load_graph(config);
  EXPECT_EQ(g.entities().size(), 21u);
  for (const auto r : {KgRepresentation::List, KgRepresentation::JsonObject}) {
    EXPECT_EQ(parse_kg_rendering(render_kg(g, r), r, g.schema()), g);
  }
}

TEST(Paths, NeighborhoodIsUndirected) {
  const auto g = small_graph();
  const auto one = r_hop_neighborhood(g, "redis", 1);
  EXPECT_EQ(one.nodes, (std::vector<std::string>{"c", "redis"}));
  ASSERT_EQ(one.edges.size(), 1u);
  const auto two = r_hop_neighborhood(g, "redis", 2);
  EXPECT_EQ(two.nodes, (std::vector<std::string>{"a", "b", "c", "redis"}));
  for (const auto& e : two.edges) EXPECT_NE(e.target, "h1");
  EXPECT_THROW(r_hop_neighborhood(g, "zzz", 1), UnknownEntityError);
  EXPECT_THROW(r_hop_neighborhood(g, "a", 0), ValidationError);
}

TEST(Paths, SimplePathsIncludeParallelEdges) {
  const auto g = small_graph();
  const auto paths = all_simple_paths(g, "a", "c");
  std::vector<std::string> text;
  for (const auto& p : paths) text.push_back(format_path(p));
  EXPECT_EQ(text, (std::vector<std::string>{"a --(calls)--> b --(calls)--> c", "a --(data_flow)--> b --(calls)--> c",
                                            "a --(calls)--> c"}));
  EXPECT_TRUE(all_simple_paths(g, "a", "a").empty());
  EXPECT_TRUE(all_simple_paths(g, "c", "a").empty());
  EXPECT_EQ(all_simple_paths(g, "a", "c", 1).size(), 1u);
}

TEST(Paths, WalkViolations) {
  const auto g = small_graph();
  const AlertedElements alerted{{"redis"}, {{"a", "b"}}};
  EXPECT_EQ(is_valid_walk(g, {}, alerted).violation, WalkViolation::EmptyPath);

  const auto ok = is_valid_walk(g, path_of({{"a", "calls", "c"}, {"c", "data_flow", "redis"}}), alerted);
  EXPECT_TRUE(ok.valid);

  const auto missing = is_valid_walk(g, path_of({{"a", "calls", "c"}, {"c", "calls", "redis"}}), alerted);
  EXPECT_EQ(missing.violation, WalkViolation::MissingEdge);
  EXPECT_EQ(missing.step, 1u);

  const auto broken = is_valid_walk(g, path_of({{"a", "calls", "b"}, {"c", "data_flow", "redis"}}), alerted);
  EXPECT_EQ(broken.violation, WalkViolation::BrokenChain);

  // Terminal edge alerted even though b itself is not.
  EXPECT_TRUE(is_valid_walk(g, path_of({{"a", "calls", "b"}}), alerted).valid);
  EXPECT_EQ(is_valid_walk(g, path_of({{"b", "calls", "c"}}), alerted).violation, WalkViolation::UnalertedTerminal);
}

TEST(Paths, PathNodes) {
  const auto p = path_of({{"a", "calls", "b"}, {"b", "calls", "c"}});
  EXPECT_TRUE(p.chains());
  EXPECT_EQ(p.nodes(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(PropagationPath{}.nodes().empty());
}

}  // namespace
}  // namespace rca::kgraph
