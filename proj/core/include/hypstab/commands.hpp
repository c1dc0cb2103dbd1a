#pragma once

#include <string>
#include <vector>

#include "hypstab/scenario.hpp"

namespace hypstab {

// Text-level command entry points; the CLI binary only adds file plumbing.
// exit_code: 0 certified stable, 1 inconclusive or unstable, 2 error
// (error holds the message, output is empty).
struct CommandResult {
    int exit_code = 0;
    std::string output;
    std::string error;
};

// Key-value stability report with the canonical scenario embedded as a
// comment block. Deterministic for a fixed scenario, seed and environment.
CommandResult cmd_analyze(const std::string& scenario_text);

// CSV "t,l2_norm" series with the scenario echoed in leading comments and
// the fitted decay appended as trailing comments. Byte-identical across
// runs. Requires a [sim] section.
CommandResult cmd_simulate(const std::string& scenario_text);

struct SweepSpec {
    std::string path;           // e.g. boundary.kl_22
    std::vector<double> values; // evaluated in order
    bool skip_sim = false;
};

// One CSV row per value, in input order; evaluations may run on several
// threads (analysis.workers, 0 = hardware count) without affecting the
// output bytes.
CommandResult cmd_sweep(const std::string& scenario_text, const SweepSpec& spec);

// count equally spaced values from lo to hi inclusive; count 1 gives {lo}.
std::vector<double> sweep_grid(double lo, double hi, int count);

// The text between the "# scenario:" and "# end scenario" markers with the
// comment prefix stripped; re-parses to the scenario the report was made
// from. Throws InvalidValue when the block is missing.
std::string extract_scenario_echo(const std::string& report);

} // namespace hypstab
