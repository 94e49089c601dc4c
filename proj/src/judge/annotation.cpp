// SPDX-License-Identifier: Apache-2.0
#include "rca/judge/annotation.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <regex>

#include <fmt/format.h>

#include "rca/judge/taxonomy.hpp"

namespace rca::judge {

using nlohmann::json;

namespace {

std::size_t next_marker(std::string_view raw, std::size_t from) {
  return std::min(raw.find("```", from), raw.find("'''", from));
}

bool is_info_word(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) != 0 || c == '_' || c == '-';
  });
}

/// Body of the last fenced block, or nullopt. Markers are ``` or ''' and
/// pair up in order; an info word such as "json" on the opening line is
/// skipped.
std::optional<std::string> last_fenced_block(std::string_view raw) {
  std::optional<std::string> last;
  std::size_t pos = 0;
  for (;;) {
    const auto open = next_marker(raw, pos);
    if (open == std::string_view::npos) break;
    const auto marker = raw.substr(open, 3);
    auto body = open + 3;
    const auto eol = raw.find('\n', body);
    if (eol != std::string_view::npos) {
      auto info = raw.substr(body, eol - body);
      while (!info.empty() && std::isspace(static_cast<unsigned char>(info.front()))) info.remove_prefix(1);
      while (!info.empty() && std::isspace(static_cast<unsigned char>(info.back()))) info.remove_suffix(1);
      if (info.empty() || is_info_word(info)) body = eol + 1;
    }
    const auto close = raw.find(marker, body);
    if (close == std::string_view::npos) break;
    last = std::string(raw.substr(body, close - body));
    pos = close + 3;
  }
  return last;
}

[[noreturn]] void fail(JudgeParseErrorKind kind, const std::string& message) { throw JudgeParseError(kind, message); }

std::string canonical_id(const std::string& text) {
  const auto* rf = find_failure(text);
  if (rf == nullptr) fail(JudgeParseErrorKind::UnknownRfId, fmt::format("unknown failure id '{}'", text));
  return rf->id;
}

int parse_severity(const json& j, const std::string& id) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (d != static_cast<int>(d)) fail(JudgeParseErrorKind::SchemaMismatch, fmt::format("{}: non-integral severity", id));
    return static_cast<int>(d);
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t k = i;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k > i && k - i < 4) return std::stoi(s.substr(i, k - i));
  }
  fail(JudgeParseErrorKind::SchemaMismatch, fmt::format("{}: severity is not a number", id));
}

std::string string_field(const json& entry, const char* key) {
  if (!entry.contains(key)) return {};
  const auto& v = entry.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return {};
  return v.dump();
}

std::vector<std::string> parse_affected(const json& j) {
  std::vector<std::string> ids;
  if (j.is_null()) return ids;
  if (j.is_array()) {
    for (const auto& item : j) {
      if (!item.is_string()) fail(JudgeParseErrorKind::SchemaMismatch, "affected_top_hypothesis: non-string item");
      ids.push_back(canonical_id(item.get<std::string>()));
    }
  } else if (j.is_string()) {
    static const std::regex kId(R"([Rr][Ff][-_]?\d{1,2})");
    const auto s = j.get<std::string>();
    for (auto it = std::sregex_iterator(s.begin(), s.end(), kId); it != std::sregex_iterator(); ++it) {
      ids.push_back(canonical_id(it->str()));
    }
  } else {
    fail(JudgeParseErrorKind::SchemaMismatch, "affected_top_hypothesis must be a list or string");
  }
  std::vector<std::string> unique;
  for (auto& id : ids) {
    if (std::find(unique.begin(), unique.end(), id) == unique.end()) unique.push_back(std::move(id));
  }
  return unique;
}

}  // namespace

std::string_view to_string(JudgeParseErrorKind kind) {
  switch (kind) {
    case JudgeParseErrorKind::NoFencedBlock:
      return "NO_FENCED_BLOCK";
    case JudgeParseErrorKind::MalformedJson:
      return "MALFORMED_JSON";
    case JudgeParseErrorKind::SchemaMismatch:
      return "SCHEMA_MISMATCH";
    case JudgeParseErrorKind::UnknownRfId:
      return "UNKNOWN_RF_ID";
    case JudgeParseErrorKind::SeverityOutOfRange:
      return "SEVERITY_OUT_OF_RANGE";
    case JudgeParseErrorKind::AffectedNotIdentified:
      return "AFFECTED_NOT_IDENTIFIED";
  }
  return "?";
}

JudgeParseError::JudgeParseError(JudgeParseErrorKind kind, const std::string& message)
    : Error(fmt::format("{}: {}", to_string(kind), message)), kind_(kind) {}

bool JudgeAnnotation::has(std::string_view rf_id) const {
  return std::any_of(failures.begin(), failures.end(), [&](const FailureEntry& f) { return f.type == rf_id; });
}

JudgeAnnotation parse_judge_output(std::string_view raw) {
  const auto block = last_fenced_block(raw);
  if (!block) fail(JudgeParseErrorKind::NoFencedBlock, "reply has no fenced block");
  json doc;
  try {
    doc = json::parse(*block);
  } catch (const json::parse_error& e) {
    fail(JudgeParseErrorKind::MalformedJson, e.what());
  }
  if (!doc.is_object() || !doc.contains("failures_identified") || !doc.at("failures_identified").is_array()) {
    fail(JudgeParseErrorKind::SchemaMismatch, "expected an object with a 'failures_identified' array");
  }
  JudgeAnnotation out;
  for (const auto& entry : doc.at("failures_identified")) {
    if (!entry.is_object() || !entry.contains("type") || !entry.at("type").is_string()) {
      fail(JudgeParseErrorKind::SchemaMismatch, "failure entry without a string 'type'");
    }
    FailureEntry f;
    f.type = canonical_id(entry.at("type").get<std::string>());
    if (!entry.contains("severity")) fail(JudgeParseErrorKind::SchemaMismatch, f.type + ": missing severity");
    f.severity = parse_severity(entry.at("severity"), f.type);
    const auto* rf = find_failure(f.type);
    if (f.severity < rf->min_severity || f.severity > rf->max_severity) {
      fail(JudgeParseErrorKind::SeverityOutOfRange,
           fmt::format("{} severity {} outside {}..{}", f.type, f.severity, rf->min_severity, rf->max_severity));
    }
    f.model_claim = string_field(entry, "model_claim");
    f.rationale = string_field(entry, "rationale");
    out.failures.push_back(std::move(f));
  }
  if (doc.contains("affected_top_hypothesis")) {
    out.affected_top_hypothesis = parse_affected(doc.at("affected_top_hypothesis"));
  }
  for (const auto& id : out.affected_top_hypothesis) {
    if (!out.has(id)) {
      fail(JudgeParseErrorKind::AffectedNotIdentified, fmt::format("{} affects the top hypothesis but is not listed", id));
    }
  }
  return out;
}

namespace {

json schema_json(const JudgeAnnotation& annotation) {
  json failures = json::array();
  for (const auto& f : annotation.failures) {
    failures.push_back(
        {{"type", f.type}, {"model_claim", f.model_claim}, {"rationale", f.rationale}, {"severity", f.severity}});
  }
  return {{"failures_identified", failures}, {"affected_top_hypothesis", annotation.affected_top_hypothesis}};
}

}  // namespace

json to_json(const JudgeAnnotation& annotation) {
  auto j = schema_json(annotation);
  j["trace_id"] = annotation.trace_id;
  return j;
}

JudgeAnnotation annotation_from_json(const json& j) {
  // Stored annotations go through the same validation as judge replies.
  auto body = j;
  body.erase("trace_id");
  auto out = parse_judge_output("```json\n" + body.dump() + "\n```");
  out.trace_id = j.value("trace_id", "");
  return out;
}

std::string render_judge_output(const JudgeAnnotation& annotation) {
  return "```json\n" + schema_json(annotation).dump(2) + "\n```\n";
}

}  // namespace rca::judge
