#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cpd::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSuiteFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the tool with args (program name excluded). Documents go to out,
/// diagnostics to err; files named by --out are written directly.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace cpd::cli
