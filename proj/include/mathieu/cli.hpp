#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mathieu::cli {

/// Exit codes of run().
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;       ///< bad flags, failed preconditions, numerical errors
inline constexpr int kValidation = 2;  ///< `validate` found a breached tolerance

/// Entry point.  CSV goes to `out` (or --output), messages and warnings to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, argv given without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mathieu::cli
