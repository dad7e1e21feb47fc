#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "waring7/tolerances.hpp"

namespace waring7 {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitMalformed = 2;

/// ε_verify from --tol, else the WARING7_TOL environment value, else the default.
/// Throws Error(ErrorKind::Parse) on a non-positive or unparsable value.
Tolerances resolve_tolerances(std::optional<double> flag, const char* env_value);

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

}  // namespace waring7
