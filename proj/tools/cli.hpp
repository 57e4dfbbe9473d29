#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cobtree {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on an error or a failed check, 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cobtree
