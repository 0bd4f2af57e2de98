#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pawspec {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `pawspec` tool; args excludes the program name.
/// PAWSPEC_SEED in the environment overrides --seed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pawspec
