#ifndef NPTK_CLI_HPP
#define NPTK_CLI_HPP

#include <string>
#include <vector>

namespace nptk {

// Runs one command; returns the process exit status.
// 0 ok, 2 syntax, 3 wild ramification, 4 limits, 5 verification failure,
// 6 unsupported input.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

} // namespace nptk

#endif
