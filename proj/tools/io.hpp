#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pbergman/analysis.hpp"

namespace pbergman::cli {

using Json = nlohmann::ordered_json;

/// One output table: typed cells (numbers, strings, booleans) and metadata.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
  Json meta = Json::object();

  void add_row(std::vector<Json> row);
};

/// RFC 4180 quoting: fields with commas, quotes or line breaks are quoted
/// and inner quotes doubled.
std::string csv_field(const std::string& text);

/// Header row then one line per row. A non-empty comment becomes a leading "# " line.
std::string to_csv(const Table& t, const std::string& comment = "");
/// {"meta": ..., "rows": [{column: value, ...}, ...]}
std::string to_json(const Table& t);

/// Writes to a temporary file next to path and renames it into place, so a
/// failed run leaves no partial file. Empty path or "-" writes to stdout.
void write_output(const std::string& path, const std::string& content);

/// "re,im" with shortest round-trip formatting.
std::string format_complex(Complex c);
/// Coordinates joined by ';'.
std::string format_point(const Eigen::VectorXcd& z);

Table scan_table(const ScanTable& scan);
Table check_table(const std::vector<std::pair<std::string, CheckResult>>& checks);

}  // namespace pbergman::cli
