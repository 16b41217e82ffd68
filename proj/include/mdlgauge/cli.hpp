#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mdlgauge::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { ok = 0, domain_failure = 1, usage_error = 2 };

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out` (or to --out files, written atomically); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mdlgauge::cli
