// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rca/alerts/alert.hpp"

namespace rca::alerts {

/// One JSON object per alert:
///   {"modality":"METRIC","timestamp":1700000000000,
///    "element":{"entity":"db1"} | {"caller":"a","callee":"b"},
///    "kind":"METRIC_ANOM","direction":"UP","payload":"cpu","unmapped":false,
///    "evidence":{"value":..,"mean":..,"stddev":..},   (metric alerts only)
///    "score":0.71}                                      (trace alerts only)
nlohmann::json to_json(const Alert& alert);
Alert alert_from_json(const nlohmann::json& j);

/// JSON-lines dump; doubles are written in shortest round-trip form so a
/// reload is bit-exact.
void write_alerts(const std::filesystem::path& path, const std::vector<Alert>& alerts);
std::vector<Alert> read_alerts(const std::filesystem::path& path);

}  // namespace rca::alerts
