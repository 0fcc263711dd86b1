#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "commands.hpp"

namespace pairlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // selftest check failed
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitData = 4;

/// Runs the command line `args` (without the program name). Reports go to
/// `out` or to files under --out; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string to_json(const NamedTable& table);

}  // namespace pairlab::cli
