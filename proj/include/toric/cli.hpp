#ifndef TORIC_CLI_HPP
#define TORIC_CLI_HPP

#include <iosfwd>

namespace toric {

enum ExitCode : int
{
    exit_ok = 0,
    exit_input = 2,
    exit_mismatch = 3,
    exit_negative = 4,
};

/// Entry point of toric-cohom; streams are injectable for tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in);

} // namespace toric

#endif
