// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rca {

/// Splits one delimited line. Double-quoted fields may contain the delimiter;
/// a doubled quote inside a quoted field is a literal quote. Returns nullopt
/// on an unterminated quote.
std::optional<std::vector<std::string>> split_delimited(std::string_view line, char delimiter);

/// Quotes a field when it contains the delimiter, a quote, or a newline.
std::string quote_field(std::string_view field, char delimiter);

struct DelimitedRow {
  std::size_t line = 0;  // 1-based line number in the file
  std::vector<std::string> fields;
};

/// Header-first delimited file. Blank lines are skipped.
struct DelimitedTable {
  std::vector<std::string> header;
  std::vector<DelimitedRow> rows;
  /// Lines whose quoting could not be parsed.
  std::vector<std::size_t> malformed_lines;

  std::optional<std::size_t> column(std::string_view name) const;
};

DelimitedTable read_delimited(const std::filesystem::path& path, char delimiter);

}  // namespace rca
