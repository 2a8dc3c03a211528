#pragma once

// Scenario configuration for the command-line front end.
//
// A scenario is a command plus a flat key/value map. Values come from, in
// increasing precedence: built-in defaults, a config file (`key = value`
// lines, one `[command]` section per command, global `output`/`format` keys
// before the first section), and command-line flags `--key value`.
// Complex numbers are written "re,im"; lists are comma separated.

#include "spinflip/types.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spinflip::io {

enum class Command { verify, scatter, bound, converge, radial, classify };
enum class Format { csv, json };

std::string_view command_name(Command c);

/// Malformed or unknown input; `key()` names the offending key when known.
class InputError : public std::runtime_error {
 public:
  InputError(std::string key, const std::string& message) : std::runtime_error(message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Thrown by parse_scenario for --help; carries the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scenario {
  Command command = Command::verify;
  std::map<std::string, std::string> params;      ///< every command key, defaults filled
  std::string output_path = "-";                   ///< "-" is standard output
  Format format = Format::csv;
  std::map<std::string, double> tolerances;        ///< "tol", and "min_order" for converge

  double real(const std::string& key) const;
  long long integer(const std::string& key) const;
  Complex complex(const std::string& key) const;
  std::vector<double> list(const std::string& key) const;
  std::array<double, 3> vec3(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  bool has_value(const std::string& key) const;  ///< false for empty optional keys
};

/// `args` excludes the program name. `--config FILE` loads a config file.
Scenario parse_scenario(const std::vector<std::string>& args);

/// As above, with config text supplied directly instead of through --config.
Scenario parse_scenario(const std::vector<std::string>& args, std::string_view config_text);

// Value parsers shared with the runner; throw InputError naming `key`.
double parse_real(const std::string& key, std::string_view text);
Complex parse_complex(const std::string& key, std::string_view text);
std::vector<double> parse_list(const std::string& key, std::string_view text);

}  // namespace spinflip::io
