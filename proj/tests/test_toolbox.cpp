// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "rca/toolbox/tools.hpp"
#include "support.hpp"

namespace rca::toolbox {
namespace {

using nlohmann::json;

class Tools : public ::testing::Test {
 protected:
  Tools() : graph_(make_graph()) {
    alerts::Alert m;
    m.modality = alerts::Modality::Metric;
    m.timestamp = 1756728000000;
    m.element = alerts::ElementRef::node("a");
    m.kind = alerts::AlertKind::MetricAnomaly;
    m.direction = alerts::Direction::Up;
    m.payload = "cpu";
    alerts::Alert t;
    t.modality = alerts::Modality::Trace;
    t.timestamp = 1756728001000;
    t.element = alerts::ElementRef::edge("b", "a");
    t.kind = alerts::AlertKind::PerformanceDegradation;
    t.payload = "PD";
    alerts_ = {m, t};
  }

  static kgraph::KnowledgeGraph make_graph() {
    kgraph::EntitySchema s;
    s.entity_types = {{"Service", "", {"high memory usage"}}, {"Host", "", {}}};
    s.relationship_types = {{"calls", "", "", ""}, {"hosted_on", "", "", ""}};
    std::vector<kgraph::Entity> entities = {{"a", "Service", {{"port", "80"}}}, {"b", "Service", {}},
                                            {"c", "Service", {}}, {"h", "Host", {}}};
    for (int i = 0; i < 5; ++i) entities.push_back({"x" + std::to_string(i), "Service", {}});
    return kgraph::KnowledgeGraph::build(s, entities,
                                         {{"b", "calls", "a", {{"rate", "high"}}},
                                          {"a", "calls", "c", {}},
                                          {"a", "hosted_on", "h", {}}});
  }

  ToolResult run(std::string name, json args, ToolboxOptions options = {}) {
    if (args.is_object() && !args.contains("reasoning")) args["reasoning"] = "checking";
    return dispatch(graph_, alerts_, make_tool_call(std::move(name), args), options);
  }

  kgraph::KnowledgeGraph graph_;
  std::vector<alerts::Alert> alerts_;
};

TEST_F(Tools, SchemasRequireReasoning) {
  const auto schemas = tool_schemas();
  ASSERT_EQ(schemas.size(), tool_names().size());
  ASSERT_EQ(schemas.size(), 6u);
  for (std::size_t i = 0; i < schemas.size(); ++i) {
    const auto& f = schemas[i]["function"];
    EXPECT_EQ(f["name"], tool_names()[i]);
    const auto req = f["parameters"]["required"].get<std::vector<std::string>>();
    EXPECT_NE(std::find(req.begin(), req.end(), "reasoning"), req.end());
  }
}

TEST_F(Tools, MakeToolCallSplitsReasoning) {
  const auto c = make_tool_call("check_node_existence", {{"node", "a"}, {"reasoning", "why"}});
  EXPECT_EQ(c.reasoning, "why");
  EXPECT_EQ(c.args, (json{{"node", "a"}}));
}

TEST_F(Tools, CheckNodeExistence) {
  EXPECT_EQ(run("check_node_existence", {{"node", "a"}}).rendered, "exists: true");
  const auto r = run("check_node_existence", {{"node", "zzz"}});
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.rendered, "exists: false");
}

TEST_F(Tools, NodeAttributesIncludeAttachedAlerts) {
  const auto r = run("get_node_attributes", {{"node", "a"}});
  ASSERT_TRUE(r.ok);
  EXPECT_NE(r.rendered.find("type: Service"), std::string::npos);
  EXPECT_NE(r.rendered.find("- port: 80"), std::string::npos);
  EXPECT_NE(r.rendered.find("METRIC | a | cpu | up"), std::string::npos);
  EXPECT_NE(r.rendered.find("TRACE | b --> a | PD"), std::string::npos);
  const auto c = run("get_node_attributes", {{"node", "c"}});
  EXPECT_NE(c.rendered.find("attributes: none"), std::string::npos);
  EXPECT_NE(c.rendered.find("alerts: none"), std::string::npos);
}

TEST_F(Tools, UnknownEntityAndType) {
  EXPECT_EQ(run("get_node_attributes", {{"node", "nope"}}).error_kind, ToolErrorKind::UnknownEntity);
  EXPECT_EQ(run("get_all_instances_of_entity_type", {{"type", "Queue"}}).error_kind, ToolErrorKind::UnknownType);
  EXPECT_EQ(run("get_all_simple_paths", {{"source", "a"}, {"target", "nope"}}).error_kind,
            ToolErrorKind::UnknownEntity);
}

TEST_F(Tools, InstancesAreTruncatedWithMarker) {
  ToolboxOptions options;
  options.max_items = 3;
  const auto r = run("get_all_instances_of_entity_type", {{"type", "Service"}}, options);
  ASSERT_TRUE(r.ok);
  EXPECT_EQ(r.rendered, "Instances of Service:\n- a\n- b\n- c\n... [truncated: 5 more of 8 items]\n");
  EXPECT_EQ(run("get_all_instances_of_entity_type", {{"type", "Host"}}).rendered, "Instances of Host:\n- h\n");
}

TEST_F(Tools, EdgeAttributesEitherDirection) {
  const auto r = run("get_edge_attributes", {{"node1", "a"}, {"node2", "b"}});
  ASSERT_TRUE(r.ok);
  EXPECT_NE(r.rendered.find("b --(calls)--> a {\"rate\":\"high\"}"), std::string::npos);
  EXPECT_EQ(run("get_edge_attributes", {{"node1", "c"}, {"node2", "h"}}).rendered, "No edges between c and h.\n");
}

TEST_F(Tools, NeighborhoodAndPaths) {
  const auto n = run("get_node_neighborhood", {{"node", "c"}, {"r", 1}});
  ASSERT_TRUE(n.ok);
  EXPECT_EQ(n.rendered.rfind("Nodes:\n", 0), 0u);
  EXPECT_NE(n.rendered.find("- a --(calls)--> c"), std::string::npos);
  EXPECT_EQ(run("get_node_neighborhood", {{"node", "c"}, {"r", 0}}).error_kind, ToolErrorKind::BadArgs);
  EXPECT_EQ(run("get_node_neighborhood", {{"node", "c"}, {"r", "two"}}).error_kind, ToolErrorKind::BadArgs);

  const auto p = run("get_all_simple_paths", {{"source", "b"}, {"target", "h"}});
  ASSERT_TRUE(p.ok);
  EXPECT_NE(p.rendered.find("- b --(calls)--> a --(hosted_on)--> h"), std::string::npos);
  EXPECT_EQ(run("get_all_simple_paths", {{"source", "h"}, {"target", "b"}}).rendered, "No paths from h to b.\n");
}

TEST_F(Tools, ArgumentErrors) {
  const auto missing = dispatch(graph_, alerts_, make_tool_call("check_node_existence", {{"node", "a"}}));
  EXPECT_EQ(missing.error_kind, ToolErrorKind::MissingReasoning);
  const auto blank = dispatch(graph_, alerts_, make_tool_call("nope", {{"node", "a"}, {"reasoning", ""}}));
  EXPECT_EQ(blank.error_kind, ToolErrorKind::MissingReasoning);
  EXPECT_EQ(run("no_such_tool", json::object()).error_kind, ToolErrorKind::BadArgs);
  EXPECT_EQ(run("check_node_existence", {{"node", 5}}).error_kind, ToolErrorKind::BadArgs);
  EXPECT_EQ(run("check_node_existence", json::object()).error_kind, ToolErrorKind::BadArgs);
  EXPECT_EQ(run("check_node_existence", {{"node", "a"}, {"extra", 1}}).error_kind, ToolErrorKind::BadArgs);
  const auto r = run("check_node_existence", {{"node", 5}});
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.rendered.rfind("Error: ", 0), 0u);
}

TEST_F(Tools, ToolboxRecordsCalls) {
  Toolbox box(graph_, alerts_);
  box.call(make_tool_call("check_node_existence", {{"node", "a"}, {"reasoning", "r"}}));
  box.call(make_tool_call("check_node_existence", {{"node", "a"}}));
  ASSERT_EQ(box.log().size(), 2u);
  EXPECT_TRUE(box.log()[0].result.ok);
  EXPECT_FALSE(box.log()[1].result.ok);
}

TEST(ToolErrors, KindNamesRoundTrip) {
  for (const auto k : {ToolErrorKind::UnknownEntity, ToolErrorKind::UnknownType, ToolErrorKind::BadArgs,
                       ToolErrorKind::MissingReasoning}) {
    EXPECT_EQ(parse_tool_error_kind(to_string(k)), k);
  }
}

}  // namespace
}  // namespace rca::toolbox
