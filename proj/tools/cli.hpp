#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simplicial::cli {

enum ExitCode : int {
    kOk = 0,
    kNonSimplicial = 1,
    kCutoff = 2,
    kPartial = 3,
    kUsage = 64,
    kDataError = 65,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simplicial::cli
