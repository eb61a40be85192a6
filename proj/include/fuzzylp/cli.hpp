#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuzzylp::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_not_optimal = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_parse = 3;

/// The alpha1 values tabulated in the source case study:
/// 1, 0.5, 0.3333, 0.25, 0.2, 0.1667, 0.1429, 0.125, 0.1111.
std::vector<double> default_alpha_grid();

/// Runs one CLI invocation.  `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace fuzzylp::cli
