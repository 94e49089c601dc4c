// SPDX-License-Identifier: Apache-2.0
#include "rca/alerts/alert_io.hpp"

#include <fstream>

#include "rca/common/error.hpp"

namespace rca::alerts {

nlohmann::json to_json(const Alert& a) {
  nlohmann::json j;
  j["modality"] = to_string(a.modality);
  j["timestamp"] = a.timestamp;
  if (a.element.is_edge()) {
    j["element"] = {{"caller", a.element.entity}, {"callee", a.element.callee}};
  } else {
    j["element"] = {{"entity", a.element.entity}};
  }
  j["kind"] = to_string(a.kind);
  j["direction"] = to_string(a.direction);
  j["payload"] = a.payload;
  j["unmapped"] = a.unmapped;
  if (a.evidence) {
    j["evidence"] = {{"value", a.evidence->value}, {"mean", a.evidence->mean}, {"stddev", a.evidence->stddev}};
  }
  if (a.anomaly_score) j["score"] = *a.anomaly_score;
  return j;
}

Alert alert_from_json(const nlohmann::json& j) {
  Alert a;
  a.modality = parse_modality(j.at("modality").get<std::string>());
  a.timestamp = j.at("timestamp").get<EpochMs>();
  const auto& e = j.at("element");
  if (e.contains("callee")) {
    a.element = ElementRef::edge(e.at("caller").get<std::string>(), e.at("callee").get<std::string>());
  } else {
    a.element = ElementRef::node(e.at("entity").get<std::string>());
  }
  a.kind = parse_alert_kind(j.at("kind").get<std::string>());
  a.direction = parse_direction(j.at("direction").get<std::string>());
  a.payload = j.at("payload").get<std::string>();
  a.unmapped = j.value("unmapped", false);
  if (j.contains("evidence")) {
    const auto& ev = j.at("evidence");
    a.evidence = MetricEvidence{ev.at("value").get<double>(), ev.at("mean").get<double>(), ev.at("stddev").get<double>()};
  }
  if (j.contains("score")) a.anomaly_score = j.at("score").get<double>();
  validate(a);
  return a;
}

void write_alerts(const std::filesystem::path& path, const std::vector<Alert>& alerts) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  for (const auto& a : alerts) out << to_json(a).dump() << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

std::vector<Alert> read_alerts(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<Alert> alerts;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      alerts.push_back(alert_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string(), n, e.what());
    } catch (const ValidationError& e) {
      throw ParseError(path.string(), n, e.what());
    }
  }
  return alerts;
}

}  // namespace rca::alerts
