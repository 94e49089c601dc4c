// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rca::alerts {

struct IsolationForestConfig {
  std::size_t n_trees = 100;
  std::size_t subsample = 256;
  double score_threshold = 0.5;
  std::uint64_t seed = 0;
};

/// Average path length of an unsuccessful BST search over n points:
/// 2 H(n-1) - 2 (n-1) / n with H(i) ~ ln(i) + Euler's constant, and
/// c(1) = 0, c(2) = 1.
double average_path_length(std::size_t n);

/// Isolation Forest over fixed-width numeric rows.
class IsolationForest {
 public:
  /// Requires at least two rows, all of equal non-zero width.
  static IsolationForest fit(const std::vector<std::vector<double>>& rows, const IsolationForestConfig& config);

  /// Mean isolation depth of `row` over the trees, with the c(size)
  /// adjustment at external nodes.
  double path_length(const std::vector<double>& row) const;
  /// 2^(-E[h(x)] / c(psi)); values near 1 are anomalous.
  double score(const std::vector<double>& row) const;

  std::size_t sample_size() const { return psi_; }

 private:
  struct Node {
    int feature = -1;  // -1 for external nodes
    double split = 0.0;
    std::size_t size = 0;
    int left = -1;
    int right = -1;
  };
  using Tree = std::vector<Node>;

  double tree_path_length(const Tree& tree, const std::vector<double>& row) const;

  std::vector<Tree> trees_;
  std::size_t psi_ = 0;
  std::size_t width_ = 0;
};

}  // namespace rca::alerts
