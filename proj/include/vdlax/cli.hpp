#ifndef VDLAX_CLI_HPP
#define VDLAX_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace vdlax
{

inline constexpr int exit_pass = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_config_error = 2;

// Runs the command line `args` (without the program name). The human table
// goes to `out`, diagnostics to `err`; --out receives the machine report
// (or the CSV for sweep).
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace vdlax

#endif
