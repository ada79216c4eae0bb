#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bilgamma::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitNumerical = 2;

/// Runs one subcommand. Tables and reports go to `out` unless an --output
/// file is given; failures print a one-line JSON envelope
/// {"error":{"code":...,"message":...}} to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bilgamma::cli
