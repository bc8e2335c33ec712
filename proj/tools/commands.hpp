#pragma once

#include <ostream>

namespace riskmkt::cli {

// Exit statuses. Every nonzero status is accompanied by exactly one line on
// the error stream of the form "error[<code>]: <reason>".
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitScenario = 3;
inline constexpr int kExitOutput = 4;
inline constexpr int kExitInternal = 5;

/// Environment variable naming the directory for CSV outputs when --out is
/// not given. Defaults to the working directory.
inline constexpr const char* kOutputDirEnv = "RISKMKT_OUTPUT_DIR";

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace riskmkt::cli
