#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sublin::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 1;
inline constexpr int kSolverFailure = 2;

/// Runs one subcommand. args excludes the program name. Errors are written
/// to err as a JSON object {"error": {"code", "message", "field"}}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace sublin::cli
