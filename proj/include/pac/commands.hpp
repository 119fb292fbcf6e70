#ifndef PAC_COMMANDS_HPP
#define PAC_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <string_view>

#include "pac/config.hpp"

namespace pac {

enum ExitCode : int { exit_ok = 0, exit_failed = 1, exit_config = 2, exit_io = 3 };

// Files go to out.dir together with manifest.txt. Errors surface as
// ConfigError / IoError.
void cmd_simulate(const RunConfig& cfg);  // measures, condensation, hub, family
void cmd_backward(const RunConfig& cfg);  // backward, fluid
void cmd_gw(const RunConfig& cfg);        // gw_mu
void cmd_twocolor(const RunConfig& cfg);  // twocolor
void cmd_theory(const RunConfig& cfg, std::ostream& out);
// Deterministic suites; true when all pass.
bool cmd_check(const RunConfig& cfg, std::ostream& out);

// Dispatches by name and maps failures to exit codes, reporting on err.
int run_command(std::string_view name, const RunConfig& cfg, std::ostream& out, std::ostream& err);

std::string format_real(double x);

}  // namespace pac

#endif  // PAC_COMMANDS_HPP
