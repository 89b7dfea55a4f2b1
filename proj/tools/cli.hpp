#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsmlkit::cli
{

/// Runs one command line (without the program name). Exit codes: 0 clean,
/// 1 findings, 2 usage, 3 resource limits. `tty` tells whether `err` is a
/// terminal, for RSMLKIT_COLOR=auto.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err,
        bool tty = false);

}  // namespace rsmlkit::cli
