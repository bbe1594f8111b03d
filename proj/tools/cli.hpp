#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace petra::cli {

/// `args` is the full argv, program name first.
/// Exit codes: 0 success, 1 computation error (calibration, fit degeneracy, ...),
/// 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads a flat `key=value` config file (`#` starts a comment) into
/// `--key=value` arguments.
std::vector<std::string> config_arguments(const std::string& path);

}  // namespace petra::cli
