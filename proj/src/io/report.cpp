#include "spinflip/io/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace spinflip::io {

namespace {

using nlohmann::ordered_json;

const std::vector<std::string> kReservedKeys{"command", "version", "input", "columns", "rows", "pass"};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell_to_csv(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "nan"; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(const std::string& s) const { return csv_field(s); }
  };
  return std::visit(Visitor{}, c);
}

ordered_json cell_to_json(const Cell& c) {
  struct Visitor {
    ordered_json operator()(std::monostate) const { return nullptr; }
    ordered_json operator()(bool b) const { return b; }
    ordered_json operator()(std::int64_t i) const { return i; }
    ordered_json operator()(double d) const { return std::isfinite(d) ? ordered_json(d) : ordered_json(nullptr); }
    ordered_json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

Cell cell_from_json(const ordered_json& j) {
  if (j.is_null()) return std::monostate{};
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw InputError("rows", "report: unsupported cell value " + j.dump());
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json to_json(const Report& report) {
  ordered_json doc = ordered_json::object();
  doc["command"] = report.command;
  doc["version"] = report.version;
  ordered_json input = ordered_json::object();
  for (const auto& [k, v] : report.input) input[k] = v;
  doc["input"] = input;
  for (const auto& [k, v] : report.summary.items()) doc[k] = v;
  doc["columns"] = report.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r = ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i) r[report.columns[i]] = cell_to_json(row[i]);
    rows.push_back(std::move(r));
  }
  doc["rows"] = rows;
  doc["pass"] = report.pass;
  return doc;
}

Report report_from_json(const ordered_json& doc) {
  if (!doc.is_object()) throw InputError("report", "report: expected a JSON object");
  for (const auto& key : kReservedKeys)
    if (!doc.contains(key)) throw InputError(key, "report: missing key '" + key + "'");

  Report r;
  r.command = doc.at("command").get<std::string>();
  r.version = doc.at("version").get<std::string>();
  for (const auto& [k, v] : doc.at("input").items()) r.input.emplace_back(k, v.get<std::string>());
  r.columns = doc.at("columns").get<std::vector<std::string>>();
  for (const auto& row : doc.at("rows")) {
    std::vector<Cell> cells;
    for (const auto& col : r.columns) cells.push_back(row.contains(col) ? cell_from_json(row.at(col)) : Cell{});
    r.rows.push_back(std::move(cells));
  }
  r.pass = doc.at("pass").get<bool>();
  for (const auto& [k, v] : doc.items()) {
    if (std::find(kReservedKeys.begin(), kReservedKeys.end(), k) == kReservedKeys.end()) r.summary[k] = v;
  }
  return r;
}

std::string emit(const Report& report, Format format) {
  if (format == Format::json) return to_json(report).dump(2) + "\n";

  std::ostringstream out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << report.columns[i];
  out << "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_to_csv(row[i]);
    out << "\n";
  }
  return out.str();
}

void write_output(const std::string& text, const std::string& path, std::ostream& fallback) {
  if (path == "-") {
    fallback << text;
    fallback.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("output", "cannot write output file '" + path + "'");
  out << text;
  if (!out) throw InputError("output", "failed writing output file '" + path + "'");
}

}  // namespace spinflip::io
