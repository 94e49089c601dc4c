// SPDX-License-Identifier: Apache-2.0
#include "rca/agent/final_answer.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <sstream>

#include "rca/agent/prompt.hpp"

namespace rca::agent {
namespace {

enum class Field { Type, Description, Location, Justification, Path };

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

/// Strips surrounding markdown emphasis, backticks and quotes.
std::string strip_markup(std::string_view s) {
  std::string t = trim(s);
  const std::string_view wrappers = "*`\"'_";
  while (!t.empty() && wrappers.find(t.front()) != std::string_view::npos) t.erase(t.begin());
  while (!t.empty() && wrappers.find(t.back()) != std::string_view::npos) t.pop_back();
  return trim(t);
}

std::string clean_name(std::string_view s) {
  auto t = strip_markup(s);
  if (!t.empty() && t.back() == '.') t.pop_back();
  // "name (Type)" annotations; graph names never contain parentheses.
  if (const auto p = t.find(" ("); p != std::string::npos && t.back() == ')') t = trim(t.substr(0, p));
  return strip_markup(t);
}

std::optional<Field> field_of(const std::string& key) {
  const auto k = lower(key);
  if (k == "type" || k == "fault type" || k == "root cause type") return Field::Type;
  if (k == "description") return Field::Description;
  if (k == "location" || k == "root cause location") return Field::Location;
  if (k == "justification") return Field::Justification;
  if (k == "propagation path" || k == "path") return Field::Path;
  return std::nullopt;
}

bool is_header_line(const std::string& line) {
  static const std::regex kHeader(R"(^\s*(#{1,6}\s.*|\d+[.)]\s*|\*\*[^*]+\*\*:?\s*|-{3,}\s*)$)");
  return std::regex_match(line, kHeader);
}

struct Draft {
  std::map<Field, std::string> fields;
};

}  // namespace

std::optional<kgraph::PropagationPath> parse_propagation_path(std::string_view text) {
  static const std::regex kArrow(R"(\s*--\(([^)]*)\)-->\s*)");
  const std::string s = strip_markup(text);
  std::vector<std::string> nodes;
  std::vector<std::string> labels;
  auto begin = std::sregex_iterator(s.begin(), s.end(), kArrow);
  std::size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    nodes.push_back(clean_name(s.substr(last, static_cast<std::size_t>(it->position()) - last)));
    labels.push_back(trim((*it)[1].str()));
    last = static_cast<std::size_t>(it->position() + it->length());
  }
  if (labels.empty()) return std::nullopt;
  nodes.push_back(clean_name(s.substr(last)));
  kgraph::PropagationPath path;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (nodes[i].empty() || nodes[i + 1].empty() || labels[i].empty()) return std::nullopt;
    path.steps.push_back({nodes[i], labels[i], nodes[i + 1]});
  }
  return path;
}

ParsedAnswer parse_final_answer(std::string_view raw, const kgraph::KnowledgeGraph* graph,
                                const std::vector<std::string>& fault_types) {
  ParsedAnswer out;
  const auto marker = raw.find(kFinalAnswerPrefix);
  if (marker == std::string_view::npos) {
    out.parse_failure = true;
    out.diagnostics.push_back("no 'Final Answer:' marker");
    return out;
  }

  static const std::regex kFieldLine(
      R"(^\s*(?:[-*+]\s+)?(?:\d+[.)]\s*)?(?:\*\*|__)?\s*(Type|Fault type|Root cause type|Description|Location|Root cause location|Justification|Propagation path|Path)\s*(?:\*\*|__)?\s*:\s*(?:\*\*|__)?\s*(.*)$)",
      std::regex::icase);

  std::vector<Draft> drafts;
  std::optional<Field> current;
  std::istringstream in{std::string(raw.substr(marker + kFinalAnswerPrefix.size()))};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (std::regex_match(line, m, kFieldLine)) {
      const auto f = *field_of(m[1].str());
      if (drafts.empty() || drafts.back().fields.contains(f)) drafts.emplace_back();
      drafts.back().fields[f] = trim(m[2].str());
      current = f;
    } else if (is_header_line(line) || trim(line).empty()) {
      current.reset();
    } else if (current && !drafts.empty()) {
      auto& v = drafts.back().fields[*current];
      if (!v.empty()) v += '\n';
      v += trim(line);
    }
  }

  std::erase_if(drafts, [](const Draft& d) {
    return !d.fields.contains(Field::Location) && !d.fields.contains(Field::Type);
  });
  if (drafts.size() > kHypothesisCount) {
    out.diagnostics.push_back("found " + std::to_string(drafts.size()) + " hypotheses, kept the first " +
                              std::to_string(kHypothesisCount));
    drafts.resize(kHypothesisCount);
  }
  if (drafts.empty()) {
    out.parse_failure = true;
    out.diagnostics.push_back("no hypothesis found after 'Final Answer:'");
    return out;
  }
  if (drafts.size() < kHypothesisCount) {
    out.diagnostics.push_back("expected 3 hypotheses, found " + std::to_string(drafts.size()));
  }

  for (std::size_t i = 0; i < drafts.size(); ++i) {
    auto& f = drafts[i].fields;
    Hypothesis h;
    h.rank = static_cast<int>(i + 1);
    h.location = clean_name(f[Field::Location]);
    h.fault_type = clean_name(f[Field::Type]);
    h.description = trim(f[Field::Description]);
    h.justification = trim(f[Field::Justification]);
    h.path_text = trim(f[Field::Path]);
    const auto tag = "hypothesis " + std::to_string(h.rank) + ": ";
    if (auto p = parse_propagation_path(h.path_text)) {
      h.path = std::move(*p);
    } else {
      h.path_unparsed = true;
      out.diagnostics.push_back(tag + "propagation path not parseable");
    }
    if (h.location.empty() || (graph != nullptr && !graph->contains(h.location))) {
      h.unknown_location = true;
      out.diagnostics.push_back(tag + "unknown location '" + h.location + "'");
    }
    const auto lt = lower(h.fault_type);
    if (std::none_of(fault_types.begin(), fault_types.end(), [&](const std::string& t) { return lower(t) == lt; })) {
      h.unknown_fault_type = true;
      out.diagnostics.push_back(tag + "unknown fault type '" + h.fault_type + "'");
    }
    out.hypotheses.push_back(std::move(h));
  }
  return out;
}

nlohmann::json to_json(const Hypothesis& h) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : h.path.steps) steps.push_back({s.source, s.relation, s.target});
  return {{"rank", h.rank},
          {"location", h.location},
          {"fault_type", h.fault_type},
          {"description", h.description},
          {"justification", h.justification},
          {"path_text", h.path_text},
          {"path", steps},
          {"unknown_location", h.unknown_location},
          {"unknown_fault_type", h.unknown_fault_type},
          {"path_unparsed", h.path_unparsed}};
}

Hypothesis hypothesis_from_json(const nlohmann::json& j) {
  Hypothesis h;
  h.rank = j.at("rank").get<int>();
  h.location = j.at("location").get<std::string>();
  h.fault_type = j.at("fault_type").get<std::string>();
  h.description = j.value("description", std::string());
  h.justification = j.value("justification", std::string());
  h.path_text = j.value("path_text", std::string());
  for (const auto& s : j.value("path", nlohmann::json::array())) {
    h.path.steps.push_back({s.at(0).get<std::string>(), s.at(1).get<std::string>(), s.at(2).get<std::string>()});
  }
  h.unknown_location = j.value("unknown_location", false);
  h.unknown_fault_type = j.value("unknown_fault_type", false);
  h.path_unparsed = j.value("path_unparsed", false);
  return h;
}

}  // namespace rca::agent
