#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace gpick::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_negative = 1,  // screen failure, not a member, not admissible
    exit_gave_up = 2,   // solver stalled or grid-limited
    exit_invalid = 3,
};

struct CommandConfig {
    std::string command;
    std::string input_path = "-";
    std::string output_path = "-";
    std::uint64_t seed = 0;
    std::map<std::string, double> tolerances;
    std::map<std::string, int> grids;
    int family_size = 8;
    int atoms = 16;
    bool include_center = true;
    std::size_t samples = 200;
    int max_iters = 20000;
    int polish_iters = 100;
    std::string mode = "roots";
    bool screen = true;
};

const std::vector<std::string>& commands();

/// Defaults for every tolerance and grid key the commands read.
CommandConfig default_config();

/// Parses argv-style arguments (without the program name). Throws
/// InvalidInputError on unknown commands or malformed flags.
CommandConfig parse_args(const std::vector<std::string>& args);

/// Runs one command; returns the exit code. Payloads go to `out` (or the
/// configured output file), diagnostics to `err`.
int run(const CommandConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

/// parse_args followed by run; "--help" prints usage and returns 0.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gpick::cli
