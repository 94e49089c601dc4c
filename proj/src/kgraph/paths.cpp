// SPDX-License-Identifier: Apache-2.0
#include "rca/kgraph/paths.hpp"

#include <algorithm>
#include <deque>

namespace rca::kgraph {

bool PropagationPath::chains() const {
  for (std::size_t i = 1; i < steps.size(); ++i) {
    if (steps[i - 1].target != steps[i].source) return false;
  }
  return true;
}

std::vector<std::string> PropagationPath::nodes() const {
  std::vector<std::string> out;
  if (steps.empty()) return out;
  out.push_back(steps.front().source);
  for (const auto& s : steps) out.push_back(s.target);
  return out;
}

std::string format_path(const PropagationPath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const auto& s = path.steps[i];
    if (i == 0 || s.source != path.steps[i - 1].target) {
      if (i > 0) out += " | ";
      out += s.source;
    }
    out += " --(" + s.relation + ")--> " + s.target;
  }
  return out;
}

Subgraph r_hop_neighborhood(const KnowledgeGraph& graph, const std::string& entity, int r) {
  const auto seed = graph.index_of(entity);
  if (!seed) throw UnknownEntityError(entity);
  if (r < 1) throw ValidationError("neighborhood radius must be at least 1");

  const auto& rels = graph.relationships();
  std::vector<int> depth(graph.entities().size(), -1);
  std::deque<std::size_t> queue{*seed};
  depth[*seed] = 0;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    if (depth[u] == r) continue;
    auto visit = [&](const std::string& name) {
      const auto v = *graph.index_of(name);
      if (depth[v] < 0) {
        depth[v] = depth[u] + 1;
        queue.push_back(v);
      }
    };
    for (auto e : graph.out_edges(u)) visit(rels[e].target);
    for (auto e : graph.in_edges(u)) visit(rels[e].source);
  }

  Subgraph sub;
  for (std::size_t i = 0; i < depth.size(); ++i) {
    if (depth[i] >= 0) sub.nodes.push_back(graph.entities()[i].name);
  }
  for (const auto& rel : rels) {
    if (depth[*graph.index_of(rel.source)] >= 0 && depth[*graph.index_of(rel.target)] >= 0) sub.edges.push_back(rel);
  }
  return sub;
}

namespace {

void dfs(const KnowledgeGraph& graph, std::size_t node, std::size_t target, std::size_t max_len,
         std::vector<bool>& on_path, std::vector<PathStep>& steps, std::vector<PropagationPath>& out) {
  if (node == target) {
    out.push_back({steps});
    return;
  }
  if (steps.size() == max_len) return;
  const auto& rels = graph.relationships();
  for (auto e : graph.out_edges(node)) {
    const auto next = *graph.index_of(rels[e].target);
    if (on_path[next]) continue;
    on_path[next] = true;
    steps.push_back({rels[e].source, rels[e].type, rels[e].target});
    dfs(graph, next, target, max_len, on_path, steps, out);
    steps.pop_back();
    on_path[next] = false;
  }
}

}  // namespace

std::vector<PropagationPath> all_simple_paths(const KnowledgeGraph& graph, const std::string& source,
                                              const std::string& target, std::size_t max_len) {
  const auto s = graph.index_of(source);
  if (!s) throw UnknownEntityError(source);
  const auto t = graph.index_of(target);
  if (!t) throw UnknownEntityError(target);
  std::vector<PropagationPath> out;
  if (*s == *t) return out;
  std::vector<bool> on_path(graph.entities().size(), false);
  on_path[*s] = true;
  std::vector<PathStep> steps;
  dfs(graph, *s, *t, max_len, on_path, steps, out);
  // Out-edges are visited in (target, type) order, which already yields
  // lexicographic node sequences; the sort pins the order for parallel edges.
  std::stable_sort(out.begin(), out.end(), [](const PropagationPath& a, const PropagationPath& b) {
    const auto na = a.nodes();
    const auto nb = b.nodes();
    if (na != nb) return na < nb;
    return a.steps < b.steps;
  });
  return out;
}

std::string to_string(WalkViolation v) {
  switch (v) {
    case WalkViolation::None:
      return "none";
    case WalkViolation::EmptyPath:
      return "empty_path";
    case WalkViolation::MissingEdge:
      return "missing_edge";
    case WalkViolation::BrokenChain:
      return "broken_chain";
    case WalkViolation::UnalertedTerminal:
      return "unalerted_terminal";
  }
  return "unknown";
}

WalkCheck is_valid_walk(const KnowledgeGraph& graph, const PropagationPath& path, const AlertedElements& alerted) {
  WalkCheck check;
  if (path.steps.empty()) {
    check.violation = WalkViolation::EmptyPath;
    check.reason = "path has no steps";
    return check;
  }
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const auto& s = path.steps[i];
    if (i > 0 && path.steps[i - 1].target != s.source) {
      check.violation = WalkViolation::BrokenChain;
      check.step = i;
      check.reason = "step " + std::to_string(i + 1) + " starts at '" + s.source + "' but the previous step ends at '" +
                     path.steps[i - 1].target + "'";
      return check;
    }
    if (!graph.has_edge(s.source, s.relation, s.target)) {
      check.violation = WalkViolation::MissingEdge;
      check.step = i;
      check.reason = "step " + std::to_string(i + 1) + ": no edge " + s.source + " --(" + s.relation + ")--> " + s.target;
      return check;
    }
  }
  const auto& last = path.steps.back();
  if (!alerted.has_entity(last.target) && !alerted.has_edge(last.source, last.target)) {
    check.violation = WalkViolation::UnalertedTerminal;
    check.reason = "path ends at '" + last.target + "', which has no alert (nor does the edge " + last.source +
                   " --> " + last.target + ")";
    return check;
  }
  check.valid = true;
  return check;
}

}  // namespace rca::kgraph
