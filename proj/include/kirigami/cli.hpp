#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kirigami::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;

/// Runs the `kgs` command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kirigami::cli
