#pragma once

// Subcommand implementations. Each returns a process exit code and writes its
// primary result to `out`; files go to `<output>_*` when an output prefix is set.

#include <iosfwd>
#include <string>
#include <vector>

#include "catlab/sequences.hpp"
#include "config.hpp"

namespace catlab::cli {

enum ExitCode : int { kSuccess = 0, kFailure = 1, kConfigError = 2, kParseError = 3, kVerificationFailure = 4 };

/// Preset name or program file. Throws ConfigError if neither, ParseError on bad program text.
Preset resolve_program(const RunConfig& rc, const std::string& name);

int cmd_simulate(const RunConfig& rc, std::ostream& out);
int cmd_scan(const RunConfig& rc, std::ostream& out);
int cmd_fit(const RunConfig& rc, std::ostream& out);
int cmd_wigner(const RunConfig& rc, std::ostream& out);
int cmd_oracle_check(const RunConfig& rc, std::ostream& out);
int cmd_plan(const RunConfig& rc, std::ostream& out);

/// Parses argv, dispatches, and maps exceptions to exit codes. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace catlab::cli
