#pragma once

#include <filesystem>
#include <vector>

#include "icas/cli/config.hpp"

namespace icas::cli {

/// Physical parameters derived from a resolved config, in SI plus 1/cm and W/cm^2.
json derived_parameters(const RunConfig& rc);

/// Run `rc.command`, writing CSV files, summary.json and manifest.json into `out`.
/// Returns the file names written, in order.
std::vector<std::string> execute(const RunConfig& rc, const std::filesystem::path& out);

/// Full command-line entry point. Exit codes: 0 success, 2 configuration or
/// usage error, 3 numerical failure, 1 anything else (for example I/O).
int run(int argc, char** argv);

}  // namespace icas::cli
