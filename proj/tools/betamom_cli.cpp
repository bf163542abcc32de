// Command-line driver: runs experiment configs, phase-diagram sweeps, and
// plot-script generation on top of the core library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "betamom/experiment.hpp"

namespace {

// Grid syntax: either "a,b,c" or "lo:hi:count" (inclusive linspace).
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0.0, hi = 0.0;
        int count = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(text);
        if (!(is >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count < 1) {
            throw betamom::ConfigError("bad grid '" + text + "' (want lo:hi:count)");
        }
        if (count == 1) {
            out.push_back(lo);
        } else {
            for (int i = 0; i < count; ++i) {
                out.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                       static_cast<double>(count - 1));
            }
        }
        return out;
    }
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw betamom::ConfigError("empty grid '" + text + "'");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"beta-interpolated momentum methods: experiments, phase sweeps, plots"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "run an experiment config (JSON)");
    run_cmd->add_option("config", config_path, "path to the config file")->required();

    std::string mu_grid = "0.1";
    std::string c_grid = "4";
    std::string beta_grid = "0:1:21";
    std::string sweep_out = "phase_sweep.csv";
    auto* sweep_cmd = app.add_subcommand("sweep-phase", "phase-diagram sweep over (mu/L, c, beta)");
    sweep_cmd->add_option("--mu-over-l", mu_grid, "mu/L grid: a,b,c or lo:hi:count");
    sweep_cmd->add_option("--c", c_grid, "c grid (s = 1/(cL)): a,b,c or lo:hi:count");
    sweep_cmd->add_option("--beta", beta_grid, "beta grid: a,b,c or lo:hi:count");
    sweep_cmd->add_option("-o,--output", sweep_out, "output CSV path, '-' for stdout");

    std::string plots_dir;
    auto* plots_cmd = app.add_subcommand("plots", "write plot scripts for CSVs in a directory");
    plots_cmd->add_option("dir", plots_dir, "artifact directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) {
            const auto config = betamom::load_config(config_path);
            const auto result = betamom::run_experiment(config);
            betamom::write_summary(result, std::cout);
            return result.exit_status();
        }
        if (sweep_cmd->parsed()) {
            const auto mu = parse_grid(mu_grid);
            const auto c = parse_grid(c_grid);
            const auto beta = parse_grid(beta_grid);
            if (sweep_out == "-") {
                betamom::sweep_phase(mu, c, beta, std::cout);
            } else {
                std::filesystem::path out = sweep_out;
                if (const char* root = std::getenv("BETAMOM_OUTPUT_ROOT"); root && *root) {
                    out = std::filesystem::path(root) / sweep_out;
                }
                std::ofstream os(out, std::ios::binary);
                if (!os) throw betamom::ConfigError("cannot open '" + out.string() + "'");
                betamom::sweep_phase(mu, c, beta, os);
                std::cout << "wrote " << out.string() << "\n";
            }
            return 0;
        }
        if (plots_cmd->parsed()) {
            const int n = betamom::emit_plots(plots_dir, std::cout);
            std::cout << n << " plot scripts written\n";
            return 0;
        }
    } catch (const betamom::ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
