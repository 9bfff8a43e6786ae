#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <unistd.h>

namespace pbergman::cli {

namespace {

std::string cell_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isnan(d)) return "nan";
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  }
  return v.dump();
}

std::string number(double v) { return cell_text(Json(v)); }

}  // namespace

void Table::add_row(std::vector<Json> row) {
  if (row.size() != columns.size()) throw std::logic_error("row width does not match the header");
  rows.push_back(std::move(row));
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string to_csv(const Table& t, const std::string& comment) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  for (std::size_t j = 0; j < t.columns.size(); ++j) out += (j ? "," : "") + csv_field(t.columns[j]);
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + csv_field(cell_text(row[j]));
    out += "\n";
  }
  return out;
}

std::string to_json(const Table& t) {
  Json doc;
  doc["meta"] = t.meta;
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::object();
    for (std::size_t j = 0; j < row.size(); ++j) r[t.columns[j]] = row[j];
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move output into " + path + ": " + ec.message());
  }
}

std::string format_complex(Complex c) { return number(c.real()) + "," + number(c.imag()); }

std::string format_point(const Eigen::VectorXcd& z) {
  std::string out;
  for (Eigen::Index j = 0; j < z.size(); ++j) out += (j ? ";" : "") + format_complex(z[j]);
  return out;
}

Table scan_table(const ScanTable& scan) {
  Table t;
  t.columns.push_back(scan.axis_name);
  for (const auto& [name, values] : scan.columns) t.columns.push_back(name);
  for (std::size_t i = 0; i < scan.axis.size(); ++i) {
    std::vector<Json> row{scan.axis[i]};
    for (const auto& [name, values] : scan.columns) row.emplace_back(values[i]);
    t.add_row(std::move(row));
  }
  for (const auto& [k, v] : scan.meta) t.meta[k] = v;
  for (const auto& [k, v] : scan.flags) t.meta[k] = v;
  return t;
}

Table check_table(const std::vector<std::pair<std::string, CheckResult>>& checks) {
  Table t;
  t.columns = {"suite", "check", "inputs", "lhs", "rhs", "margin", "tolerance", "passed", "note"};
  for (const auto& [suite, c] : checks) {
    const auto side = [](Complex v) { return v.imag() == 0.0 ? Json(v.real()) : Json(format_complex(v)); };
    t.add_row({suite, c.name, c.inputs, side(c.lhs), side(c.rhs), c.margin, c.tolerance, c.passed, c.note});
  }
  return t;
}

}  // namespace pbergman::cli
