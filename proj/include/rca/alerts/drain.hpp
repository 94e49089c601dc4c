// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rca/telemetry/records.hpp"

namespace rca::alerts {

inline constexpr std::string_view kWildcard = "<*>";

struct LogTemplate {
  int template_id = 0;
  std::vector<std::string> tokens;
  std::size_t frequency = 0;

  /// Tokens joined by single spaces.
  std::string text() const;

  bool operator==(const LogTemplate&) const = default;
};

struct DrainConfig {
  /// Tree depth including the root and length layers; depth - 2 leading
  /// tokens are used as prefix keys.
  int depth = 4;
  double sim_threshold = 0.4;
  std::size_t max_children = 100;
};

struct DrainResult {
  /// template_id equals the index in this vector.
  std::vector<LogTemplate> templates;
  /// Template id per input record.
  std::vector<int> assignment;
};

std::vector<std::string> tokenize(std::string_view message);
/// Replaces every token containing a digit with the wildcard.
std::vector<std::string> mask(std::vector<std::string> tokens);

/// Drain fixed-depth parse tree clustering. Deterministic in input order.
DrainResult drain_parse(const std::vector<telemetry::LogRecord>& logs, const DrainConfig& config = {});

}  // namespace rca::alerts
