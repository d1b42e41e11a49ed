#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace segvsa::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kIoError = 2,
    kValidationError = 3,
    kDemoFailure = 4,
    kNotFound = 5,
};

/// Runs the `hvsa` command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace segvsa::cli
