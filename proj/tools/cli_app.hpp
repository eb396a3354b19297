#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinstat::cli {

inline constexpr const char* kSchemaVersion = "1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. `args` excludes the program name. The envelope goes
/// to `out`; usage diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinstat::cli
