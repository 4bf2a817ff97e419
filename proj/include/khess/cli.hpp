// cli.hpp
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "khess/check_report.hpp"
#include "khess/shooter.hpp"

namespace khess {

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitBadConfig = 2,
    kExitNoConvergence = 3,
    kExitNumerical = 4,
};

nlohmann::json to_json(const CheckReport& c);
/// {converged, c, iterations, residual, boundary_gap, blowup_radius, profile_csv_path, checks, ...}
nlohmann::json to_json(const SolveReport& r, const std::string& profile_csv_path = {});

/// Merges a JSON config (flat object, optional "command") into the argument
/// list: config values come first, so explicit flags win.
std::vector<std::string> merge_config(const nlohmann::json& cfg, std::vector<std::string> args);

/// Entry point; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace khess
