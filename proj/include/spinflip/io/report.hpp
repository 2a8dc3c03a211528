#pragma once

// Command reports and their CSV / JSON serialization.

#include "spinflip/io/scenario.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace spinflip::io {

inline constexpr const char* kToolkitVersion = SPINFLIP_VERSION;

/// Table cell; monostate is an undefined value (JSON null, CSV "nan").
using Cell = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

struct Report {
  std::string command;
  std::string version = kToolkitVersion;
  std::vector<std::pair<std::string, std::string>> input;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool pass = true;
};

/// CSV: header line of `columns`, then one line per row, doubles with 17
/// significant digits. JSON: keys command, version, input, the summary keys,
/// columns, rows, pass, in that order.
std::string emit(const Report& report, Format format);

nlohmann::ordered_json to_json(const Report& report);

/// Inverse of to_json. Throws InputError on a malformed document.
Report report_from_json(const nlohmann::ordered_json& doc);

std::string format_double(double v);

/// Writes to `path`, or to `fallback` when path is "-". Throws
/// InputError("output", ...) when the file cannot be written.
void write_output(const std::string& text, const std::string& path, std::ostream& fallback);

}  // namespace spinflip::io
