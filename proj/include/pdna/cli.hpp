#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdna {

// Exit codes of the pdna tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitParse = 2,        // key, cipher or table spec could not be parsed
    kExitConsistency = 3,  // key does not decrypt this cipher
};

// Runs one pdna command. args excludes the program name. Reports go to out,
// diagnostics (one line each) to err.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdna
