// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "rca/common/error.hpp"

namespace rca::judge {

struct FailureEntry {
  std::string type;  // canonical "RF-NN"
  std::string model_claim;
  std::string rationale;
  int severity = 1;

  bool operator==(const FailureEntry&) const = default;
};

struct JudgeAnnotation {
  /// Set by the caller; not part of the judge's reply.
  std::string trace_id;
  /// "failures_identified" in the reply.
  std::vector<FailureEntry> failures;
  std::vector<std::string> affected_top_hypothesis;

  bool has(std::string_view rf_id) const;
  bool operator==(const JudgeAnnotation&) const = default;
};

enum class JudgeParseErrorKind {
  NoFencedBlock,
  MalformedJson,
  SchemaMismatch,
  UnknownRfId,
  SeverityOutOfRange,
  AffectedNotIdentified,
};

std::string_view to_string(JudgeParseErrorKind kind);

class JudgeParseError : public Error {
 public:
  JudgeParseError(JudgeParseErrorKind kind, const std::string& message);
  JudgeParseErrorKind kind() const { return kind_; }

 private:
  JudgeParseErrorKind kind_;
};

/// Parses the judge's raw reply. The last fenced block (```json, ``` or
/// '''json) holds {"failures_identified": [...], "affected_top_hypothesis": ...}.
/// Severity may be an integer or a string starting with one; the affected
/// list may be an array or a string containing RF ids.
JudgeAnnotation parse_judge_output(std::string_view raw);

/// Renders an annotation as a reply that parse_judge_output accepts. The
/// trace id is not rendered.
std::string render_judge_output(const JudgeAnnotation& annotation);

nlohmann::json to_json(const JudgeAnnotation& annotation);
JudgeAnnotation annotation_from_json(const nlohmann::json& j);

}  // namespace rca::judge
