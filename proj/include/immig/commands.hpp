#pragma once

#include "immig/config.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace immig {

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 1,
    exit_numerical = 2,
    exit_diagnostic = 3,
};

/// [run] section.
struct RunSettings {
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string id;
    std::filesystem::path output_dir;
};

/// Reads [run]; output_dir falls back to $IMMIG_OUTPUT_DIR, then ./immig-out.
RunSettings read_run_settings(const Config& config, const std::string& command);

struct CommandOutput {
    std::string csv;
    std::string json;
    RunSettings run;
};

const std::vector<std::string>& command_names();

/// Validates the whole config, then runs the command. Throws the library's
/// error types; nothing is written.
CommandOutput execute_command(const std::string& command, const Config& config);

/// execute_command plus writing <output_dir>/<command>.{csv,json}. Errors are
/// reported on `err` and mapped to exit codes; no file is written on error.
int run_command(const std::string& command, const Config& config, std::ostream& err);

}  // namespace immig
