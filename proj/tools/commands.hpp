#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli_config.hpp"

namespace sqgpu::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Executes a parsed configuration. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_config + run with the exit-status mapping used by the binary.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqgpu::cli
