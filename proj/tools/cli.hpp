#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace affekt::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kIo = 2 };

// Runs the command line in-process. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace affekt::cli
