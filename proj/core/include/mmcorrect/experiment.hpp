#pragma once

#include <cstdint>
#include <string>

namespace mmc {

// Exit-code contract shared by the library and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;      // bad config / input files
inline constexpr int kExitAssertionFailed = 2;  // a mathematical guarantee failed
inline constexpr int kExitIncomplete = 3;       // a reduction ran out of budget

struct RunOutcome {
    std::string report_json;  // deterministic except for the "timing" object
    int exit_code = kExitOk;
};

// Runs the experiment described by a JSON config (see README for the
// schema) and produces the JSON report.  Re-running the same config
// reproduces every non-timing field bit-exactly, regardless of the thread
// count.  Throws ConfigError for malformed configs.
RunOutcome run_experiment(const std::string& config_json_text);

}  // namespace mmc
