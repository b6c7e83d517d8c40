#pragma once

#include <string>

#include "cli_config.hpp"

namespace affineproj::cli {

struct CommandResult {
    nlohmann::json summary;  // printed to stdout
    std::string csv;         // written to the output path when nonempty
    std::string text;        // human-readable report, printed to stderr
};

CommandResult cmd_validate(const RunConfig& config);
CommandResult cmd_dims(const RunConfig& config);
CommandResult cmd_scan(const RunConfig& config);
CommandResult cmd_furstenberg(const RunConfig& config);
CommandResult cmd_equidist(const RunConfig& config);
CommandResult cmd_render(const RunConfig& config);

/// Exit codes: 0 success, 2 config error, 3 math-precondition error,
/// 4 budget exceeded, 1 anything else.
int exit_code_for(const std::exception& e);

}  // namespace affineproj::cli
