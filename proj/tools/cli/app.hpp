#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entkit::cli {

/// Exit codes: 0 ok, 1 entangled/violated verdict, 2 malformed input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitInput = 2;

/// Runs one command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 12 significant digits, negative zero printed as 0.
std::string format_number(double x);

}  // namespace entkit::cli
