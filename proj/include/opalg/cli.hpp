#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opalg::cli {

/// Exit codes: 0 success, 1 verification failure, 2 input or parse error.
int run(int argc, char** argv);
/// Same, with explicit arguments (argv[0] excluded) and output streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opalg::cli
