// SPDX-License-Identifier: Apache-2.0
#include "rca/judge/sampling.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "rca/common/hash.hpp"
#include "rca/common/random.hpp"

namespace rca::judge {

std::vector<std::string> stratified_sample(const std::vector<TraceTag>& traces, std::size_t quota,
                                           std::uint64_t seed) {
  using Cell = std::tuple<std::string, std::string, std::string>;
  std::map<Cell, std::vector<std::string>> cells;
  for (const auto& t : traces) cells[{t.dataset, t.model, t.workflow}].push_back(t.trace_id);

  std::vector<std::string> out;
  for (auto& [cell, ids] : cells) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    const auto take = std::min(quota, ids.size());
    if (take < ids.size()) {
      const auto& [dataset, model, workflow] = cell;
      DeterministicRng rng(seed ^ fnv1a64(dataset + "|" + model + "|" + workflow));
      for (std::size_t i = 0; i < take; ++i) {
        const auto j = i + rng.below(ids.size() - i);
        std::swap(ids[i], ids[j]);
      }
      ids.resize(take);
      std::sort(ids.begin(), ids.end());
    }
    out.insert(out.end(), ids.begin(), ids.end());
  }
  return out;
}

}  // namespace rca::judge
