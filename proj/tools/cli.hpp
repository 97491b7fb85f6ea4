#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace snn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitGuard = 3;

/// Runs one subcommand. `args` excludes the program name. Output JSON and
/// tables go to `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace snn::cli
