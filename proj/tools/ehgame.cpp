// Command-line front end: runs the configured experiments and writes CSV
// tables. Exit codes: 0 success, 1 validation/config/I-O error, 2 numeric
// or convergence error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ehg/errors.hpp"
#include "ehg/harness.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "config file (key = value sections)")
        ->required();
    cmd->add_option("--out", args.out_path, "output CSV path")->required();
    cmd->add_option("--seed", args.seed, "override sweep.base_seed");
}

std::string summary_path(const std::string& path) {
    auto dot = path.rfind('.');
    if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
        return path + "_summary";
    return path.substr(0, dot) + "_summary" + path.substr(dot);
}

ehg::SweepConfig load(const CommonArgs& args) {
    ehg::SweepConfig cfg = ehg::load_sweep_config(args.config_path);
    if (args.seed) cfg.base_seed = *args.seed;
    return cfg;
}

void write_sweep_outputs(const std::vector<ehg::SweepRecord>& records,
                         const std::string& out_path) {
    ehg::emit_csv(records, out_path);
    const std::string spath = summary_path(out_path);
    ehg::emit_summary_csv(records, spath);
    std::cout << records.size() << " records -> " << out_path << "\n"
              << "summary -> " << spath << "\n";
}

void require_single_node(const ehg::SweepConfig& cfg) {
    if (cfg.scenario.sensors != 1)
        throw ehg::validation_error("scenario.N: this subcommand requires N = 1");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stackelberg equilibria for wireless-energy-harvesting networks"};
    app.require_subcommand(1);

    CommonArgs single_args, m1_args, dist_args, unc_args, bound_args;

    CLI::App* single = app.add_subcommand(
        "single-node", "closed-form equilibrium vs. beacon distance (N = 1)");
    add_common(single, single_args);

    CLI::App* m1 = app.add_subcommand(
        "m1-exact", "single-antenna equilibria: closed form and exact system (M = N = 1)");
    add_common(m1, m1_args);

    CLI::App* dist = app.add_subcommand("sweep-distance",
                                        "multi-solver sweep over beacon distance");
    add_common(dist, dist_args);

    CLI::App* unc = app.add_subcommand("sweep-uncertainty",
                                       "per-antenna power vs. error coefficient (N = 1)");
    add_common(unc, unc_args);

    CLI::App* bound = app.add_subcommand("validate-bound",
                                         "Monte-Carlo check of the non-outage bound");
    add_common(bound, bound_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (single->parsed()) {
            ehg::SweepConfig cfg = load(single_args);
            require_single_node(cfg);
            for (ehg::Solver s : cfg.solvers)
                if (s != ehg::Solver::closed_form && s != ehg::Solver::m1_exact)
                    throw ehg::validation_error(
                        "sweep.solvers: single-node supports closed_form and m1_exact");
            write_sweep_outputs(ehg::run_distance_sweep(cfg), single_args.out_path);
        } else if (m1->parsed()) {
            ehg::SweepConfig cfg = load(m1_args);
            require_single_node(cfg);
            if (cfg.scenario.antennas != 1)
                throw ehg::validation_error("scenario.M: m1-exact requires M = 1");
            write_sweep_outputs(ehg::run_distance_sweep(cfg), m1_args.out_path);
        } else if (dist->parsed()) {
            ehg::SweepConfig cfg = load(dist_args);
            write_sweep_outputs(ehg::run_distance_sweep(cfg), dist_args.out_path);
        } else if (unc->parsed()) {
            ehg::SweepConfig cfg = load(unc_args);
            write_sweep_outputs(ehg::run_uncertainty_sweep(cfg), unc_args.out_path);
        } else if (bound->parsed()) {
            ehg::SweepConfig cfg = load(bound_args);
            ehg::BoundReport report = ehg::validate_bound(cfg);
            ehg::emit_bound_report_csv(report, bound_args.out_path);
            std::cout << report.rows.size() << " rows -> " << bound_args.out_path << "\n"
                      << "violations: " << report.violations << "/" << report.rows.size()
                      << "\n";
        }
    } catch (const ehg::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const ehg::validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const ehg::io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
