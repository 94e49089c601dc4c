// SPDX-License-Identifier: Apache-2.0
#include "rca/common/csv.hpp"

#include <fstream>

#include "rca/common/error.hpp"

namespace rca {

ParseError::ParseError(std::string source, std::size_t line, const std::string& message)
    : Error(line == 0 ? source + ": " + message
                      : source + ":" + std::to_string(line) + ": " + message),
      source_(std::move(source)),
      line_(line) {}

std::optional<std::vector<std::string>> split_delimited(std::string_view line, char delimiter) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool field_started_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
      continue;
    }
    if (c == '"' && current.empty() && !field_started_quoted) {
      quoted = true;
      field_started_quoted = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(current));
      current.clear();
      field_started_quoted = false;
    } else {
      current.push_back(c);
    }
  }
  if (quoted) return std::nullopt;
  fields.push_back(std::move(current));
  return fields;
}

std::string quote_field(std::string_view field, char delimiter) {
  if (field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::optional<std::size_t> DelimitedTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

DelimitedTable read_delimited(const std::filesystem::path& path, char delimiter) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");

  DelimitedTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_delimited(line, delimiter);
    if (!have_header) {
      if (!fields) throw ParseError(path.string(), line_no, "malformed header");
      table.header = std::move(*fields);
      have_header = true;
      continue;
    }
    if (!fields) {
      table.malformed_lines.push_back(line_no);
      continue;
    }
    table.rows.push_back({line_no, std::move(*fields)});
  }
  if (!have_header) throw ParseError(path.string(), 0, "empty file (no header)");
  return table;
}

}  // namespace rca
