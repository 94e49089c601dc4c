// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>

namespace rca::metrics {

inline constexpr std::size_t kWilcoxonExactMaxN = 25;

struct WilcoxonResult {
  /// False when every paired difference is zero ("no difference").
  bool defined = false;
  /// Sum of ranks of positive / negative differences (mid-ranks for ties).
  double w_plus = 0.0;
  double w_minus = 0.0;
  /// min(w_plus, w_minus).
  double statistic = 0.0;
  /// Two-sided.
  double p_value = 1.0;
  /// Pairs left after dropping zero differences.
  std::size_t n = 0;
  bool exact = false;
};

/// Two-sided signed-rank test on differences a[i] - b[i]. Zero differences
/// are dropped, tied magnitudes get mid-ranks. For n <= 25 the p-value is
/// the exact null probability of a W+ at least as far from its mean as the
/// observed one, by enumeration over sign assignments of the observed ranks;
/// above that the normal approximation with tie-corrected variance is used.
/// Throws ValidationError when the lengths differ.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

}  // namespace rca::metrics
