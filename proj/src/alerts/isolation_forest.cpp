// SPDX-License-Identifier: Apache-2.0
#include "rca/alerts/isolation_forest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rca/common/error.hpp"
#include "rca/common/random.hpp"

namespace rca::alerts {
namespace {

constexpr double kEulerGamma = std::numbers::egamma;

}  // namespace

double average_path_length(std::size_t n) {
  if (n <= 1) return 0.0;
  if (n == 2) return 1.0;
  const double m = static_cast<double>(n - 1);
  return 2.0 * (std::log(m) + kEulerGamma) - 2.0 * m / static_cast<double>(n);
}

IsolationForest IsolationForest::fit(const std::vector<std::vector<double>>& rows, const IsolationForestConfig& config) {
  if (rows.size() < 2) throw ValidationError("isolation forest needs at least two rows");
  if (config.n_trees == 0 || config.subsample < 2) throw ValidationError("isolation forest needs trees and subsample >= 2");
  const std::size_t width = rows.front().size();
  if (width == 0) throw ValidationError("isolation forest rows must be non-empty");
  for (const auto& r : rows) {
    if (r.size() != width) throw ValidationError("isolation forest rows differ in width");
  }

  IsolationForest forest;
  forest.width_ = width;
  forest.psi_ = std::min(config.subsample, rows.size());
  const auto height_limit = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(forest.psi_))));
  DeterministicRng rng(config.seed);

  std::vector<std::size_t> all(rows.size());
  std::iota(all.begin(), all.end(), 0);
  forest.trees_.reserve(config.n_trees);
  for (std::size_t t = 0; t < config.n_trees; ++t) {
    // Partial Fisher-Yates draws psi rows without replacement.
    std::vector<std::size_t> sample = all;
    for (std::size_t i = 0; i < forest.psi_; ++i) {
      const auto j = i + rng.below(sample.size() - i);
      std::swap(sample[i], sample[j]);
    }
    sample.resize(forest.psi_);

    Tree tree;
    struct Pending {
      int node;
      std::vector<std::size_t> members;
      std::size_t depth;
    };
    std::vector<Pending> stack;
    tree.push_back({});
    stack.push_back({0, std::move(sample), 0});
    while (!stack.empty()) {
      auto job = std::move(stack.back());
      stack.pop_back();
      tree[job.node].size = job.members.size();
      if (job.depth >= height_limit || job.members.size() <= 1) continue;

      // Features that still vary among the members.
      std::vector<std::size_t> candidates;
      for (std::size_t f = 0; f < width; ++f) {
        const auto [lo, hi] = std::minmax_element(job.members.begin(), job.members.end(), [&](auto a, auto b) {
          return rows[a][f] < rows[b][f];
        });
        if (rows[*lo][f] < rows[*hi][f]) candidates.push_back(f);
      }
      if (candidates.empty()) continue;
      const auto f = candidates[rng.below(candidates.size())];
      double lo = rows[job.members.front()][f];
      double hi = lo;
      for (auto m : job.members) {
        lo = std::min(lo, rows[m][f]);
        hi = std::max(hi, rows[m][f]);
      }
      double split = rng.uniform(lo, hi);
      if (split <= lo) split = std::nextafter(lo, hi);

      std::vector<std::size_t> left;
      std::vector<std::size_t> right;
      for (auto m : job.members) (rows[m][f] < split ? left : right).push_back(m);

      const int l = static_cast<int>(tree.size());
      tree.push_back({});
      const int r = static_cast<int>(tree.size());
      tree.push_back({});
      tree[job.node].feature = static_cast<int>(f);
      tree[job.node].split = split;
      tree[job.node].left = l;
      tree[job.node].right = r;
      stack.push_back({r, std::move(right), job.depth + 1});
      stack.push_back({l, std::move(left), job.depth + 1});
    }
    forest.trees_.push_back(std::move(tree));
  }
  return forest;
}

double IsolationForest::tree_path_length(const Tree& tree, const std::vector<double>& row) const {
  int node = 0;
  double depth = 0.0;
  while (tree[node].feature >= 0) {
    node = row[tree[node].feature] < tree[node].split ? tree[node].left : tree[node].right;
    depth += 1.0;
  }
  return depth + average_path_length(tree[node].size);
}

double IsolationForest::path_length(const std::vector<double>& row) const {
  if (row.size() != width_) throw ValidationError("row width does not match the fitted forest");
  double total = 0.0;
  for (const auto& tree : trees_) total += tree_path_length(tree, row);
  return total / static_cast<double>(trees_.size());
}

double IsolationForest::score(const std::vector<double>& row) const {
  return std::exp2(-path_length(row) / average_path_length(psi_));
}

}  // namespace rca::alerts
