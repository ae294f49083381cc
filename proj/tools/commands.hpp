#pragma once

namespace mixdenoise::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCaseFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point for the `mixdenoise` tool: corrupt, detect, denoise, evaluate, benchmark.
int run(int argc, char** argv);

}  // namespace mixdenoise::cli
