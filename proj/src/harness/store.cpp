// SPDX-License-Identifier: Apache-2.0
#include "rca/harness/store.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "rca/common/error.hpp"

namespace rca::harness {

namespace fs = std::filesystem;
using nlohmann::json;

void check_scenario_id(std::string_view id) {
  const bool ok = !id.empty() && id != "." && id != ".." && std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-';
  });
  if (!ok) throw ValidationError(fmt::format("scenario id '{}' is not usable as a file name", id));
}

fs::path Store::alerts_file(std::string_view scenario_id) const {
  check_scenario_id(scenario_id);
  return alerts_dir() / (std::string(scenario_id) + ".jsonl");
}

fs::path Store::trace_file(std::string_view scenario_id) const {
  check_scenario_id(scenario_id);
  return traces_dir() / (std::string(scenario_id) + ".jsonl");
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const auto tid = std::hash<std::thread::id>{}(std::this_thread::get_id());
  const fs::path tmp = path.string() + fmt::format(".tmp{:x}", tid);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), 0, e.what());
  }
}

void write_json(const fs::path& path, const json& doc) { write_file_atomic(path, doc.dump(2) + "\n"); }

json to_json(const telemetry::FaultScenario& s) {
  return {{"id", s.id},
          {"window_start", s.window_start},
          {"window_end", s.window_end},
          {"location", s.gt_location},
          {"fault_type", s.gt_fault_type},
          {"dataset", s.dataset_tag}};
}

telemetry::FaultScenario scenario_from_json(const json& j) {
  telemetry::FaultScenario s;
  s.id = j.at("id").get<std::string>();
  s.window_start = j.at("window_start").get<EpochMs>();
  s.window_end = j.at("window_end").get<EpochMs>();
  s.gt_location = j.at("location").get<std::string>();
  s.gt_fault_type = j.at("fault_type").get<std::string>();
  s.dataset_tag = j.value("dataset", "");
  return s;
}

void write_scenarios(const Store& store, const std::vector<telemetry::FaultScenario>& scenarios) {
  json arr = json::array();
  for (const auto& s : scenarios) arr.push_back(to_json(s));
  write_json(store.scenarios_file(), arr);
}

std::vector<telemetry::FaultScenario> read_scenarios(const Store& store) {
  if (!fs::exists(store.scenarios_file())) {
    throw Error("no curated scenarios at " + store.scenarios_file().string() + "; run 'extract' first");
  }
  std::vector<telemetry::FaultScenario> out;
  for (const auto& j : read_json(store.scenarios_file())) out.push_back(scenario_from_json(j));
  return out;
}

}  // namespace rca::harness
