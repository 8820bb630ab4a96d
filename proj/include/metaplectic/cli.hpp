#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace metaplectic {

/// Runs one subcommand. `args` excludes the program name. Returns 0 when every
/// verdict passes, 1 on a failed verdict or computation error, 2 on bad usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metaplectic
