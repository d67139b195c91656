#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace specbound::cli {

/// Runs one specbound invocation. `args` excludes the program name.
/// Returns 0 on success (JSON report on `out`), 2 on a usage error and 1 on a
/// computation error (message on `err`).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specbound::cli
