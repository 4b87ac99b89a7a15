#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hylink
{
// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1; // `check`: some validity verdict is fail
inline constexpr int kExitUsage = 2;       // bad command line or configuration
inline constexpr int kExitInfeasible = 3;  // an inverse solve has no solution
inline constexpr int kExitIo = 4;

// Runs one command. `args` excludes the program name.
//
//   hybridlink eval   [--config PATH] [--format csv|json] [--tol REAL]
//   hybridlink check  [--config PATH]
//   hybridlink fig3..fig7 [--config PATH] [--out DIR] [--format csv|json] [--plot] [--tol REAL]
//   hybridlink sweep  [--figure figN] [--min X] [--max X] [--count N] [--scale linear|log]
//                     [--series a,b,...] plus the figure flags
//
// `--config defaults` (or no --config) uses the built-in parameter set.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hylink
