#pragma once

#include <ostream>
#include <span>
#include <string>

namespace fpe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitProcessing = 2;

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out`, usage text and diagnostics to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fpe::cli
