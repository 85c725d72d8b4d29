#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pollq::cli {

enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kValidationError = 2,
    kIoError = 3,
    kBudgetError = 4,
};

// Entry point for the `pollq` tool; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pollq::cli
