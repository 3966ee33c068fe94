#pragma once

#include <string>
#include <vector>

namespace corekg {

// Entry point shared by the binary and the tests. argv follows main()
// conventions (argv[0] is the program name). Returns the process exit code;
// failures print to stderr and return nonzero.
int run_cli(int argc, const char* const* argv);

// Convenience overload: args without the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace corekg
