#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sumsetlab::cli {

// Runs one subcommand. `args` excludes the program name. Exit codes:
//   0  success
//   1  a checked bound or identity failed (named on `err`)
//   2  usage error: bad flags, malformed inputs, refused problem sizes
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace sumsetlab::cli
