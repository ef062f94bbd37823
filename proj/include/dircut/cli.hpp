#pragma once

#include <string>
#include <vector>

namespace dircut {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitNoCut = 3;
inline constexpr int kExitInternal = 4;

struct CliResult {
  std::string output;
  int exit_code = 0;
};

// Full command-line front end as a library call; the binary is a thin
// wrapper. Output is a flat one-key-per-line record, byte-identical for
// identical (input, flags, seed) unless --timings is given.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace dircut
