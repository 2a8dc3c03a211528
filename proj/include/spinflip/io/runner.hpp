#pragma once

// Dispatch of scenarios to the toolkit modules.

#include "spinflip/io/report.hpp"
#include "spinflip/io/scenario.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace spinflip::io {

/// Exit codes of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs one scenario. Module precondition violations surface as
/// std::invalid_argument / std::out_of_range, numerical failures as
/// NumericalError.
Report run_scenario(const Scenario& s);

/// Full command-line flow: parse, run, emit, write. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinflip::io
