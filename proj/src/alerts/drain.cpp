// SPDX-License-Identifier: Apache-2.0
#include "rca/alerts/drain.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>

#include "rca/common/error.hpp"

namespace rca::alerts {
namespace {

bool has_digit(std::string_view token) {
  return std::any_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); });
}

struct Node {
  std::map<std::string, std::unique_ptr<Node>, std::less<>> children;
  std::vector<int> clusters;
};

struct Match {
  double similarity = 0.0;
  std::size_t params = 0;
};

Match similarity(const std::vector<std::string>& tmpl, const std::vector<std::string>& tokens) {
  Match m;
  std::size_t same = 0;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] == kWildcard) {
      ++m.params;
    } else if (tmpl[i] == tokens[i]) {
      ++same;
    }
  }
  m.similarity = tmpl.empty() ? 1.0 : static_cast<double>(same) / static_cast<double>(tmpl.size());
  return m;
}

class Drain {
 public:
  explicit Drain(const DrainConfig& config) : config_(config) {
    if (config.depth < 3) throw ValidationError("Drain depth must be at least 3");
    if (config.sim_threshold <= 0.0 || config.sim_threshold >= 1.0) {
      throw ValidationError("Drain similarity threshold must lie in (0, 1)");
    }
  }

  // `masked` routes through the tree and keys the exact-match memo, so
  // messages differing only in digit-bearing tokens always share a cluster;
  // templates keep raw tokens so wildcards appear only where values varied.
  int add(const std::vector<std::string>& tokens, const std::vector<std::string>& masked) {
    if (auto it = exact_.find(masked); it != exact_.end()) {
      generalize(templates_[it->second].tokens, tokens);
      ++templates_[it->second].frequency;
      return it->second;
    }
    Node* leaf = descend(masked);
    int best = -1;
    Match best_match;
    for (int id : leaf->clusters) {
      const auto m = similarity(templates_[id].tokens, tokens);
      if (best < 0 || m.similarity > best_match.similarity ||
          (m.similarity == best_match.similarity && m.params > best_match.params)) {
        best = id;
        best_match = m;
      }
    }
    if (best >= 0 && best_match.similarity >= config_.sim_threshold) {
      generalize(templates_[best].tokens, tokens);
      ++templates_[best].frequency;
    } else {
      best = static_cast<int>(templates_.size());
      templates_.push_back({best, tokens, 1});
      leaf->clusters.push_back(best);
    }
    exact_.emplace(masked, best);
    return best;
  }

  std::vector<LogTemplate> take() { return std::move(templates_); }

 private:
  static void generalize(std::vector<std::string>& tmpl, const std::vector<std::string>& tokens) {
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
      if (tmpl[i] != tokens[i]) tmpl[i] = std::string(kWildcard);
    }
  }

  // Walks (creating as needed) length node then up to depth - 2 prefix
  // tokens. Digit tokens are already masked, so they share the wildcard child.
  Node* descend(const std::vector<std::string>& tokens) {
    auto& len_node = root_.children[std::to_string(tokens.size())];
    if (!len_node) len_node = std::make_unique<Node>();
    Node* node = len_node.get();
    const std::size_t prefix = std::min(tokens.size(), static_cast<std::size_t>(config_.depth - 2));
    for (std::size_t i = 0; i < prefix; ++i) {
      const auto& token = tokens[i];
      std::string key;
      if (node->children.contains(token)) {
        key = token;
      } else if (has_digit(token) || token == kWildcard) {
        key = std::string(kWildcard);
      } else if (node->children.contains(kWildcard)) {
        key = node->children.size() < config_.max_children ? token : std::string(kWildcard);
      } else if (node->children.size() + 1 < config_.max_children) {
        key = token;
      } else {
        key = std::string(kWildcard);
      }
      auto& child = node->children[key];
      if (!child) child = std::make_unique<Node>();
      node = child.get();
    }
    return node;
  }

  DrainConfig config_;
  Node root_;
  std::vector<LogTemplate> templates_;
  std::map<std::vector<std::string>, int> exact_;
};

}  // namespace

std::string LogTemplate::text() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view message) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < message.size()) {
    while (i < message.size() && std::isspace(static_cast<unsigned char>(message[i]))) ++i;
    const auto begin = i;
    while (i < message.size() && !std::isspace(static_cast<unsigned char>(message[i]))) ++i;
    if (i > begin) {
      auto token = message.substr(begin, i - begin);
      tokens.emplace_back(token);
    }
  }
  return tokens;
}

std::vector<std::string> mask(std::vector<std::string> tokens) {
  for (auto& t : tokens) {
    if (has_digit(t)) t = std::string(kWildcard);
  }
  return tokens;
}

DrainResult drain_parse(const std::vector<telemetry::LogRecord>& logs, const DrainConfig& config) {
  Drain drain(config);
  DrainResult result;
  result.assignment.reserve(logs.size());
  for (const auto& log : logs) {
    auto tokens = tokenize(log.message);
    auto masked = mask(tokens);
    result.assignment.push_back(drain.add(tokens, masked));
  }
  result.templates = drain.take();
  return result;
}

}  // namespace rca::alerts
