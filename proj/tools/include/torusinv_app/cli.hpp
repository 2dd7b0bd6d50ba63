#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace torusinv::app {

enum ExitStatus { kExitOk = 0, kExitCheckFailed = 1, kExitInputError = 2 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torusinv::app
