#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opengrid::cli {

// Exit codes: 0 success, 1 invalid input or usage, 2 internal failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInternal = 2;

// args excludes the program name. Artifacts go to `out` (or --out), the
// summary line and warnings to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opengrid::cli
