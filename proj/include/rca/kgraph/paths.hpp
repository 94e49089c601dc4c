// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rca/kgraph/graph.hpp"

namespace rca::kgraph {

struct PathStep {
  std::string source;
  std::string relation;
  std::string target;

  auto operator<=>(const PathStep&) const = default;
};

struct PropagationPath {
  std::vector<PathStep> steps;

  /// True when every step's target is the next step's source.
  bool chains() const;
  /// Node sequence source, target, target, ...; empty for an empty path.
  std::vector<std::string> nodes() const;

  auto operator<=>(const PropagationPath&) const = default;
};

/// "a --(rel)--> b --(rel2)--> c"
std::string format_path(const PropagationPath& path);

struct Subgraph {
  std::vector<std::string> nodes;  // sorted
  std::vector<Relationship> edges;  // canonical order, both endpoints in `nodes`
};

/// Every entity within `r` undirected hops of `entity`, including the seed,
/// plus the induced edges. Throws UnknownEntityError, or ValidationError when
/// r < 1.
Subgraph r_hop_neighborhood(const KnowledgeGraph& graph, const std::string& entity, int r);

inline constexpr std::size_t kDefaultMaxPathLength = 8;

/// Directed simple paths from `source` to `target` with at most `max_len`
/// edges, ordered lexicographically by node sequence and then by relation
/// types. Parallel edges of different types yield distinct paths.
/// source == target yields no paths. Throws UnknownEntityError.
std::vector<PropagationPath> all_simple_paths(const KnowledgeGraph& graph, const std::string& source,
                                              const std::string& target,
                                              std::size_t max_len = kDefaultMaxPathLength);

/// Graph elements reported by at least one alert. Edges are (caller, callee).
struct AlertedElements {
  std::set<std::string> entities;
  std::set<std::pair<std::string, std::string>> edges;

  bool has_entity(const std::string& name) const { return entities.contains(name); }
  bool has_edge(const std::string& source, const std::string& target) const {
    return edges.contains({source, target});
  }
};

enum class WalkViolation { None, EmptyPath, MissingEdge, BrokenChain, UnalertedTerminal };

std::string to_string(WalkViolation v);

struct WalkCheck {
  bool valid = false;
  WalkViolation violation = WalkViolation::None;
  /// Index of the offending step for MissingEdge / BrokenChain.
  std::optional<std::size_t> step;
  std::string reason;
};

/// Checks each step in order (chaining with the previous step, then edge
/// existence), then that the terminal node or terminal edge is alerted.
/// Reports the first violation found. An empty path is invalid.
WalkCheck is_valid_walk(const KnowledgeGraph& graph, const PropagationPath& path, const AlertedElements& alerted);

}  // namespace rca::kgraph
