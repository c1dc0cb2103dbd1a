#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hypstab/commands.hpp"
#include "hypstab/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hypstab::InvalidValue("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// 0/1 carry the verdict, 2 is any error; stdout stays clean for piping.
int deliver(const hypstab::CommandResult& res, const std::string& out_path) {
    if (res.exit_code == 2) {
        std::cerr << "hypstab: " << res.error << "\n";
        return 2;
    }
    if (out_path.empty()) {
        std::cout << res.output;
        return res.exit_code;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "hypstab: cannot write " << out_path << "\n";
        return 2;
    }
    out << res.output;
    return res.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary feedback stabilization of linear hyperbolic systems"};
    app.require_subcommand(1);

    std::string scenario_path, out_path;

    CLI::App* analyze = app.add_subcommand("analyze", "stability report for a scenario");
    analyze->add_option("scenario", scenario_path, "scenario file")->required();
    analyze->add_option("-o,--output", out_path, "write the report here instead of stdout");

    CLI::App* simulate = app.add_subcommand("simulate", "closed-loop deviation norms as CSV");
    simulate->add_option("scenario", scenario_path, "scenario file")->required();
    simulate->add_option("-o,--output", out_path, "write the CSV here instead of stdout");

    CLI::App* sweep = app.add_subcommand("sweep", "re-evaluate over a range of one control");
    std::string param;
    std::vector<double> values, grid;
    bool no_sim = false;
    sweep->add_option("scenario", scenario_path, "scenario file")->required();
    sweep->add_option("--param", param, "parameter path, e.g. boundary.k0_11")->required();
    CLI::Option* values_opt =
        sweep->add_option("--values", values, "comma-separated values")->delimiter(',');
    CLI::Option* grid_opt =
        sweep->add_option("--grid", grid, "lo,hi,count")->delimiter(',')->expected(3);
    values_opt->excludes(grid_opt);
    sweep->add_flag("--no-sim", no_sim, "skip the per-value simulation");
    sweep->add_option("-o,--output", out_path, "write the CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        std::string text = read_file(scenario_path);
        if (analyze->parsed()) return deliver(hypstab::cmd_analyze(text), out_path);
        if (simulate->parsed()) return deliver(hypstab::cmd_simulate(text), out_path);

        hypstab::SweepSpec spec;
        spec.path = param;
        spec.skip_sim = no_sim;
        if (!grid.empty()) {
            double count = grid[2];
            if (count != std::floor(count) || count < 1) {
                std::cerr << "hypstab: grid count must be a positive integer\n";
                return 2;
            }
            spec.values = hypstab::sweep_grid(grid[0], grid[1], static_cast<int>(count));
        } else {
            spec.values = values;
        }
        return deliver(hypstab::cmd_sweep(text, spec), out_path);
    } catch (const hypstab::Error& e) {
        std::cerr << "hypstab: " << e.what() << "\n";
        return 2;
    }
}
