#include "spinflip/io/scenario.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace spinflip::io {

namespace {

enum class KeyType { integer, positive_integer, real, positive_real, complex, list, vec3, choice, family, optional_real };

struct KeySpec {
  std::string name;
  KeyType type;
  std::string default_value;
  std::string help;
  std::vector<std::string> choices = {};
};

constexpr std::array<Command, 6> kCommands{Command::verify, Command::scatter, Command::bound,
                                           Command::converge, Command::radial, Command::classify};

const std::vector<std::string> kToleranceKeys{"tol", "min_order"};

const std::vector<KeySpec>& key_table(Command c) {
  static const std::vector<std::string> bc_choices{"family", "rashba_x1", "rashba_x4"};
  static const std::map<Command, std::vector<KeySpec>> table{
      {Command::verify,
       {{"samples", KeyType::positive_integer, "200", "random z values per family"},
        {"seed", KeyType::integer, "20190613", "seed of the z sampler"},
        {"radius", KeyType::positive_real, "2", "z drawn uniformly from |z| <= radius"},
        {"tol", KeyType::positive_real, "1e-12", "pass threshold for every residual"}}},
      {Command::scatter,
       {{"bc", KeyType::choice, "family", "boundary matrix source", bc_choices},
        {"family", KeyType::family, "3", "extension family 1..4"},
        {"z", KeyType::complex, "2,0", "family coupling re,im"},
        {"value", KeyType::real, "1", "Rashba strength for bc=rashba_x1/rashba_x4"},
        {"kmin", KeyType::positive_real, "1", "first wavenumber"},
        {"kmax", KeyType::positive_real, "1", "last wavenumber"},
        {"steps", KeyType::positive_integer, "1", "number of wavenumbers"},
        {"side", KeyType::choice, "both", "incidence side", {"left", "right", "both"}},
        {"tol", KeyType::positive_real, "1e-10", "flux-conservation threshold"}}},
      {Command::bound,
       {{"bc", KeyType::choice, "family", "boundary matrix source", bc_choices},
        {"family", KeyType::family, "3", "extension family 1..4"},
        {"z", KeyType::complex, "2,0", "family coupling re,im"},
        {"value", KeyType::real, "1", "Rashba strength for bc=rashba_x1/rashba_x4"},
        {"kappa_max", KeyType::positive_real, "10", "upper end of the decay-rate scan"},
        {"tol", KeyType::positive_real, "1e-8", "boundary residual threshold"}}},
      {Command::converge,
       {{"shape", KeyType::choice, "rectangle", "profile shape", {"rectangle", "bump"}},
        {"x1", KeyType::real, "1", "potential coupling along sigma_y"},
        {"ax", KeyType::real, "0", "potential coupling along sigma_x"},
        {"x4", KeyType::real, "0", "kinetic coupling along sigma_y (exploratory)"},
        {"k", KeyType::positive_real, "1", "wavenumber"},
        {"eps", KeyType::list, "0.4,0.2,0.1,0.05", "strictly decreasing profile widths"},
        {"min_order", KeyType::real, "0.9", "minimum fitted convergence order"}}},
      {Command::radial,
       {{"omega", KeyType::real, "-2", "scalar strength Omega"},
        {"w", KeyType::vec3, "0,0,1", "polarizational strengths wx,wy,wz"},
        {"k", KeyType::list, "1", "wavenumbers for phase shifts"},
        {"tol", KeyType::positive_real, "1e-12", "boundary-condition threshold"}}},
      {Command::classify,
       {{"z1", KeyType::complex, "0,0.5", "coupling z1 re,im"},
        {"z2", KeyType::complex, "0,0", "coupling z2 re,im"},
        {"z3", KeyType::complex, "0,0", "coupling z3 re,im"},
        {"z4", KeyType::complex, "1,0", "coupling z4 re,im"},
        {"x1", KeyType::optional_real, "", "Rashba x1 for the boundary variants (default -Im z1)"},
        {"x4", KeyType::optional_real, "", "Rashba x4 for the boundary variants (default -Re z4)"},
        {"k", KeyType::positive_real, "1", "wavenumber of the flux diagnostic"},
        {"tol", KeyType::positive_real, "1e-12", "filter and self-adjointness threshold"}}},
  };
  return table.at(c);
}

const KeySpec* find_key(Command c, const std::string& name) {
  const auto& keys = key_table(c);
  const auto it = std::find_if(keys.begin(), keys.end(), [&](const KeySpec& k) { return k.name == name; });
  return it == keys.end() ? nullptr : &*it;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(',', start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

long long parse_integer(const std::string& key, std::string_view text) {
  text = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
    throw InputError(key, key + ": expected an integer, got '" + std::string(text) + "'");
  return v;
}

void validate(Command c, const KeySpec& spec, const std::string& value) {
  const std::string& key = spec.name;
  switch (spec.type) {
    case KeyType::integer:
      parse_integer(key, value);
      break;
    case KeyType::positive_integer:
      if (parse_integer(key, value) < 1) throw InputError(key, key + " must be >= 1");
      break;
    case KeyType::real:
      parse_real(key, value);
      break;
    case KeyType::positive_real:
      if (!(parse_real(key, value) > 0.0)) throw InputError(key, key + " must be positive");
      break;
    case KeyType::optional_real:
      if (!trim(value).empty()) parse_real(key, value);
      break;
    case KeyType::complex:
      parse_complex(key, value);
      break;
    case KeyType::list: {
      const auto xs = parse_list(key, value);
      if (std::any_of(xs.begin(), xs.end(), [](double x) { return !(x > 0.0); }))
        throw InputError(key, key + ": values must be positive");
      if (c == Command::converge) {
        if (xs.size() < 3) throw InputError(key, key + ": need at least three values");
        for (std::size_t i = 1; i < xs.size(); ++i)
          if (!(xs[i] < xs[i - 1])) throw InputError(key, key + ": values must be strictly decreasing");
      }
      break;
    }
    case KeyType::vec3:
      if (parse_list(key, value).size() != 3) throw InputError(key, key + ": expected three comma-separated values");
      break;
    case KeyType::choice:
      if (std::find(spec.choices.begin(), spec.choices.end(), value) == spec.choices.end())
        throw InputError(key, key + ": unsupported value '" + value + "'");
      break;
    case KeyType::family: {
      const long long f = parse_integer(key, value);
      if (f < 1 || f > 4) throw InputError(key, "family out of range");
      break;
    }
  }
}

struct ConfigValues {
  std::map<std::string, std::string> global;
  std::map<std::string, std::string> section;
};

ConfigValues read_config(Command active, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(in);
  } catch (const CLI::Error& e) {
    throw InputError("config", std::string("config: ") + e.what());
  }

  ConfigValues out;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    std::string value;
    for (std::size_t i = 0; i < item.inputs.size(); ++i) value += (i ? "," : "") + item.inputs[i];

    if (item.parents.empty()) {
      if (item.name != "output" && item.name != "format")
        throw InputError(item.name, "unknown key '" + item.name + "'");
      out.global[item.name] = value;
      continue;
    }
    const std::string& section = item.parents.front();
    const auto cmd = std::find_if(kCommands.begin(), kCommands.end(),
                                  [&](Command c) { return command_name(c) == section; });
    if (item.parents.size() != 1 || cmd == kCommands.end())
      throw InputError(section, "unknown config section '" + section + "'");
    if (find_key(*cmd, item.name) == nullptr)
      throw InputError(item.name, "unknown key '" + item.name + "' in section [" + section + "]");
    if (*cmd == active) out.section[item.name] = value;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("config", "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view command_summary(Command c) {
  switch (c) {
    case Command::verify: return "algebraic identities of the four extension families on sampled z";
    case Command::scatter: return "reflection/transmission amplitudes over a k grid";
    case Command::bound: return "bound states on the line";
    case Command::converge: return "epsilon -> 0 convergence of a regularized coupling";
    case Command::radial: return "half-line bound states and s-wave phase shifts for Phi'(0) = W Phi(0)";
    case Command::classify: return "spin-compatibility filter and current-jump diagnostics";
  }
  return "";
}

Scenario parse_impl(const std::vector<std::string>& args, const std::optional<std::string_view>& config_text) {
  CLI::App app{"Spin-flip point interactions of the two-channel 1D Schroedinger operator", "spinflip"};
  app.fallthrough();
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string output;
  std::string format;
  app.add_option("--config", config_path, "config file with [command] sections");
  app.add_option("-o,--output", output, "output path, '-' for standard output");
  app.add_option("--format", format, "csv or json");

  std::map<Command, std::map<std::string, std::string>> flags;
  std::map<Command, CLI::App*> subs;
  for (Command c : kCommands) {
    CLI::App* sub = app.add_subcommand(std::string(command_name(c)), std::string(command_summary(c)));
    for (const auto& spec : key_table(c)) {
      std::string help = spec.help + " [default: " + (spec.default_value.empty() ? "derived" : spec.default_value) + "]";
      sub->add_option("--" + spec.name, flags[c][spec.name], help);
    }
    subs[c] = sub;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw InputError("", e.what());
  }

  Scenario s;
  s.command = *std::find_if(kCommands.begin(), kCommands.end(), [&](Command c) { return subs[c]->parsed(); });

  ConfigValues cfg;
  if (config_text) {
    cfg = read_config(s.command, *config_text);
  } else if (!config_path.empty()) {
    cfg = read_config(s.command, read_file(config_path));
  }

  CLI::App* sub = subs[s.command];
  for (const auto& spec : key_table(s.command)) {
    std::string value = spec.default_value;
    if (auto it = cfg.section.find(spec.name); it != cfg.section.end()) value = it->second;
    if (sub->get_option("--" + spec.name)->count() > 0) value = flags[s.command][spec.name];
    value = std::string(trim(value));
    validate(s.command, spec, value);
    if (std::find(kToleranceKeys.begin(), kToleranceKeys.end(), spec.name) != kToleranceKeys.end()) {
      s.tolerances[spec.name] = parse_real(spec.name, value);
    } else {
      s.params[spec.name] = value;
    }
  }

  s.output_path = "-";
  if (auto it = cfg.global.find("output"); it != cfg.global.end()) s.output_path = it->second;
  if (app.get_option("--output")->count() > 0) s.output_path = output;

  std::string fmt = "csv";
  if (auto it = cfg.global.find("format"); it != cfg.global.end()) fmt = it->second;
  if (app.get_option("--format")->count() > 0) fmt = format;
  if (fmt == "csv") {
    s.format = Format::csv;
  } else if (fmt == "json") {
    s.format = Format::json;
  } else {
    throw InputError("format", "format: expected csv or json, got '" + fmt + "'");
  }
  return s;
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::verify: return "verify";
    case Command::scatter: return "scatter";
    case Command::bound: return "bound";
    case Command::converge: return "converge";
    case Command::radial: return "radial";
    case Command::classify: return "classify";
  }
  return "unknown";
}

double parse_real(const std::string& key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
    throw InputError(key, key + ": expected a finite number, got '" + std::string(text) + "'");
  return v;
}

Complex parse_complex(const std::string& key, std::string_view text) {
  const auto parts = split_commas(text);
  if (parts.size() != 2) throw InputError(key, key + ": expected a complex number as 're,im'");
  return {parse_real(key, parts[0]), parse_real(key, parts[1])};
}

std::vector<double> parse_list(const std::string& key, std::string_view text) {
  std::vector<double> out;
  for (auto part : split_commas(text)) out.push_back(parse_real(key, part));
  return out;
}

double Scenario::real(const std::string& key) const { return parse_real(key, text(key)); }

long long Scenario::integer(const std::string& key) const { return parse_integer(key, text(key)); }

Complex Scenario::complex(const std::string& key) const { return parse_complex(key, text(key)); }

std::vector<double> Scenario::list(const std::string& key) const { return parse_list(key, text(key)); }

std::array<double, 3> Scenario::vec3(const std::string& key) const {
  const auto xs = list(key);
  if (xs.size() != 3) throw InputError(key, key + ": expected three comma-separated values");
  return {xs[0], xs[1], xs[2]};
}

const std::string& Scenario::text(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw InputError(key, "missing key '" + key + "'");
  return it->second;
}

bool Scenario::has_value(const std::string& key) const {
  const auto it = params.find(key);
  return it != params.end() && !it->second.empty();
}

Scenario parse_scenario(const std::vector<std::string>& args) { return parse_impl(args, std::nullopt); }

Scenario parse_scenario(const std::vector<std::string>& args, std::string_view config_text) {
  return parse_impl(args, config_text);
}

}  // namespace spinflip::io
