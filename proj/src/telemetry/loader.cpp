// SPDX-License-Identifier: Apache-2.0
#include "rca/telemetry/loader.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>

#include "rca/common/csv.hpp"
#include "rca/common/error.hpp"

namespace rca::telemetry {
namespace {

/// Thrown inside a row parser; converted to ParseError or a RecordIssue.
struct RowError {
  std::string message;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& text, std::string_view field) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (t.empty() || ec != std::errc{} || ptr != last) {
    throw RowError{"field '" + std::string(field) + "' is not numeric: '" + text + "'"};
  }
  return value;
}

int parse_int(const std::string& text, std::string_view field) {
  const std::string t = trim(text);
  int value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw RowError{"field '" + std::string(field) + "' is not an integer: '" + text + "'"};
  }
  return value;
}

EpochMs parse_timestamp(const std::string& text, TimeUnit unit, std::string_view field) {
  const double raw = parse_double(text, field);
  double ms = raw;
  switch (unit) {
    case TimeUnit::Seconds: ms = raw * 1000.0; break;
    case TimeUnit::Milliseconds: break;
    case TimeUnit::Microseconds: ms = raw / 1000.0; break;
  }
  if (!std::isfinite(ms)) throw RowError{"field '" + std::string(field) + "' is not finite"};
  return static_cast<EpochMs>(std::llround(ms));
}

/// Resolves required and optional columns against the header.
class ColumnIndex {
 public:
  ColumnIndex(const DelimitedTable& table, const SourceSpec& spec) : table_(table), spec_(spec) {}

  std::size_t required(const std::string& field) const {
    const std::string name = spec_.column_for(field);
    auto idx = table_.column(name);
    if (!idx) {
      throw ParseError(spec_.path.string(), 0,
                       "missing required column '" + name + "' (field '" + field + "')");
    }
    return *idx;
  }

  std::optional<std::size_t> optional(const std::string& field) const {
    return table_.column(spec_.column_for(field));
  }

 private:
  const DelimitedTable& table_;
  const SourceSpec& spec_;
};

const std::string& cell(const DelimitedRow& row, std::size_t idx) {
  if (idx >= row.fields.size()) {
    throw RowError{"row has " + std::to_string(row.fields.size()) + " fields, expected at least " +
                   std::to_string(idx + 1)};
  }
  return row.fields[idx];
}

/// Drives `parse_row` over every row with strict/lenient error handling.
template <typename Record>
std::vector<Record> parse_rows(const DelimitedTable& table, const SourceSpec& spec, ParseMode mode,
                               const std::function<Record(const DelimitedRow&)>& parse_row,
                               std::vector<RecordIssue>& issues) {
  const std::string source = spec.path.string();
  auto report = [&](std::size_t line, const std::string& message) {
    if (mode == ParseMode::Strict) throw ParseError(source, line, message);
    issues.push_back({source, line, message});
  };
  for (std::size_t line : table.malformed_lines) report(line, "unterminated quoted field");

  std::vector<Record> records;
  records.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    try {
      Record r = parse_row(row);
      validate(r);
      records.push_back(std::move(r));
    } catch (const RowError& e) {
      report(row.line, e.message);
    } catch (const ValidationError& e) {
      report(row.line, std::string("invariant violation: ") + e.what());
    }
  }
  return records;
}

TimeUnit parse_time_unit(const std::string& s) {
  if (s == "s" || s == "seconds") return TimeUnit::Seconds;
  if (s == "ms" || s == "milliseconds") return TimeUnit::Milliseconds;
  if (s == "us" || s == "microseconds") return TimeUnit::Microseconds;
  throw ValidationError("unknown timestamp_unit '" + s + "'");
}

}  // namespace

std::string SourceSpec::column_for(const std::string& field) const {
  auto it = columns.find(field);
  return it == columns.end() ? field : it->second;
}

LoadResult load_telemetry(const TelemetrySources& sources, ParseMode mode) {
  LoadResult result;
  auto& issues = result.issues;

  if (sources.logs) {
    const auto& spec = *sources.logs;
    const auto table = read_delimited(spec.path, spec.delimiter);
    const ColumnIndex cols(table, spec);
    const auto ts = cols.required("timestamp");
    const auto entity = cols.required("entity");
    const auto message = cols.required("message");
    const auto level = cols.optional("level");
    result.telemetry.logs = parse_rows<LogRecord>(
        table, spec, mode,
        [&](const DelimitedRow& row) {
          LogRecord r;
          r.timestamp = parse_timestamp(cell(row, ts), spec.time_unit, "timestamp");
          r.entity = trim(cell(row, entity));
          r.message = cell(row, message);
          r.level = level ? parse_log_level(cell(row, *level)) : LogLevel::Other;
          return r;
        },
        issues);
  }

  if (sources.metrics) {
    const auto& spec = *sources.metrics;
    const auto table = read_delimited(spec.path, spec.delimiter);
    const ColumnIndex cols(table, spec);
    const auto ts = cols.required("timestamp");
    const auto entity = cols.required("entity");
    const auto name = cols.required("metric_name");
    const auto value = cols.required("value");
    result.telemetry.metrics = parse_rows<MetricRecord>(
        table, spec, mode,
        [&](const DelimitedRow& row) {
          MetricRecord r;
          r.timestamp = parse_timestamp(cell(row, ts), spec.time_unit, "timestamp");
          r.entity = trim(cell(row, entity));
          r.metric_name = trim(cell(row, name));
          r.value = parse_double(cell(row, value), "value");
          return r;
        },
        issues);
  }

  if (sources.traces) {
    const auto& spec = *sources.traces;
    const auto table = read_delimited(spec.path, spec.delimiter);
    const ColumnIndex cols(table, spec);
    const auto caller = cols.required("caller");
    const auto callee = cols.required("callee");
    const auto start = cols.required("start");
    const auto duration = cols.required("duration");
    const auto status = cols.required("status_code");
    const auto trace_id = cols.optional("trace_id");
    const auto span_id = cols.optional("span_id");
    result.telemetry.spans = parse_rows<TraceSpan>(
        table, spec, mode,
        [&](const DelimitedRow& row) {
          TraceSpan s;
          s.caller = trim(cell(row, caller));
          s.callee = trim(cell(row, callee));
          s.start = parse_timestamp(cell(row, start), spec.time_unit, "start");
          s.duration_ms = parse_double(cell(row, duration), "duration");
          s.status_code = parse_int(cell(row, status), "status_code");
          if (trace_id) s.trace_id = trim(cell(row, *trace_id));
          if (span_id) s.span_id = trim(cell(row, *span_id));
          return s;
        },
        issues);
  }

  sort_by_time(result.telemetry);
  return result;
}

ScenarioLoad load_scenarios(const SourceSpec& spec, ParseMode mode) {
  ScenarioLoad result;
  const auto table = read_delimited(spec.path, spec.delimiter);
  const ColumnIndex cols(table, spec);
  const auto id = cols.required("id");
  const auto start = cols.required("window_start");
  const auto end = cols.required("window_end");
  const auto location = cols.required("location");
  const auto fault_type = cols.required("fault_type");
  const auto dataset = cols.optional("dataset");
  result.scenarios = parse_rows<FaultScenario>(
      table, spec, mode,
      [&](const DelimitedRow& row) {
        FaultScenario s;
        s.id = trim(cell(row, id));
        s.window_start = parse_timestamp(cell(row, start), spec.time_unit, "window_start");
        s.window_end = parse_timestamp(cell(row, end), spec.time_unit, "window_end");
        s.gt_location = trim(cell(row, location));
        s.gt_fault_type = trim(cell(row, fault_type));
        if (dataset) s.dataset_tag = trim(cell(row, *dataset));
        return s;
      },
      result.issues);
  std::stable_sort(result.scenarios.begin(), result.scenarios.end(), [](const auto& a, const auto& b) {
    return a.window_start != b.window_start ? a.window_start < b.window_start : a.id < b.id;
  });
  return result;
}

SourceSpec source_spec_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  SourceSpec spec;
  const std::filesystem::path p = j.at("path").get<std::string>();
  spec.path = p.is_absolute() ? p : base_dir / p;
  const std::string delim = j.value("delimiter", std::string(","));
  if (delim == "\\t") {
    spec.delimiter = '\t';
  } else if (delim.size() == 1) {
    spec.delimiter = delim[0];
  } else {
    throw ValidationError("delimiter must be a single character");
  }
  spec.time_unit = parse_time_unit(j.value("timestamp_unit", std::string("ms")));
  if (j.contains("columns")) {
    for (const auto& [field, column] : j.at("columns").items()) {
      spec.columns[field] = column.get<std::string>();
    }
  }
  return spec;
}

TelemetrySources telemetry_sources_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  TelemetrySources sources;
  if (j.contains("logs")) sources.logs = source_spec_from_json(j.at("logs"), base_dir);
  if (j.contains("metrics")) sources.metrics = source_spec_from_json(j.at("metrics"), base_dir);
  if (j.contains("traces")) sources.traces = source_spec_from_json(j.at("traces"), base_dir);
  return sources;
}

}  // namespace rca::telemetry
