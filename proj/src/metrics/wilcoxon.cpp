// SPDX-License-Identifier: Apache-2.0
#include "rca/metrics/wilcoxon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "rca/common/error.hpp"

namespace rca::metrics {
namespace {

constexpr double kZeroTolerance = 1e-12;
constexpr double kTieTolerance = 1e-9;

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("Wilcoxon test needs paired samples of equal length");
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    if (std::fabs(diff) > kZeroTolerance) d.push_back(diff);
  }
  WilcoxonResult res;
  res.n = d.size();
  if (d.empty()) return res;
  res.defined = true;

  // Mid-ranks of |d|, stored doubled so they are integers.
  std::vector<std::size_t> order(d.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return std::fabs(d[i]) < std::fabs(d[j]); });
  std::vector<long> rank2(d.size());
  std::vector<std::size_t> tie_sizes;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && std::fabs(std::fabs(d[order[j]]) - std::fabs(d[order[i]])) <= kTieTolerance) ++j;
    // Ranks i+1..j averaged, doubled: (i + 1 + j).
    for (std::size_t t = i; t < j; ++t) rank2[order[t]] = static_cast<long>(i + 1 + j);
    tie_sizes.push_back(j - i);
    i = j;
  }

  long w2_plus = 0;
  long total2 = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    total2 += rank2[i];
    if (d[i] > 0) w2_plus += rank2[i];
  }
  res.w_plus = w2_plus / 2.0;
  res.w_minus = (total2 - w2_plus) / 2.0;
  res.statistic = std::min(res.w_plus, res.w_minus);

  const double n = static_cast<double>(d.size());
  if (d.size() <= kWilcoxonExactMaxN) {
    // counts[s] = number of sign assignments with doubled W+ equal to s.
    std::vector<double> counts(static_cast<std::size_t>(total2) + 1, 0.0);
    counts[0] = 1.0;
    long reach = 0;
    for (auto r : rank2) {
      for (long s = reach; s >= 0; --s) {
        if (counts[static_cast<std::size_t>(s)] != 0.0) counts[static_cast<std::size_t>(s + r)] += counts[static_cast<std::size_t>(s)];
      }
      reach += r;
    }
    // |2 W+ - T| compared in doubled units: |2 s - total2| >= |2 w - total2|.
    const long observed = std::labs(2 * w2_plus - total2);
    double tail = 0.0;
    for (long s = 0; s <= total2; ++s) {
      if (std::labs(2 * s - total2) >= observed) tail += counts[static_cast<std::size_t>(s)];
    }
    res.p_value = std::min(1.0, tail / std::ldexp(1.0, static_cast<int>(d.size())));
    res.exact = true;
    return res;
  }

  const double mean = n * (n + 1.0) / 4.0;
  double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
  for (auto t : tie_sizes) {
    const double tt = static_cast<double>(t);
    var -= (tt * tt * tt - tt) / 48.0;
  }
  if (var <= 0.0) {
    res.p_value = 1.0;
    return res;
  }
  const double z = (res.w_plus - mean) / std::sqrt(var);
  res.p_value = std::min(1.0, std::erfc(std::fabs(z) / std::sqrt(2.0)));
  return res;
}

}  // namespace rca::metrics
