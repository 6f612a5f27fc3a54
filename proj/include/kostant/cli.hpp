#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kostant::cli {

/// Exit codes: 0 success, 1 verification failure or runtime error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace kostant::cli
