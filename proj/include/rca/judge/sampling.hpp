// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rca::judge {

struct TraceTag {
  std::string trace_id;
  std::string dataset;
  std::string model;
  std::string workflow;
};

/// Draws up to `quota` ids per (dataset, model, workflow) cell, uniformly
/// without replacement. Cells come out in key order and ids within a cell
/// sorted, so the result depends only on the input set and the seed.
std::vector<std::string> stratified_sample(const std::vector<TraceTag>& traces, std::size_t quota,
                                           std::uint64_t seed);

}  // namespace rca::judge
