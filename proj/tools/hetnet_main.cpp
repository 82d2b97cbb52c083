#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hetnet/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Community detection in heterogeneous networks"};
    app.require_subcommand(1);

    hetnet::cli::DetectOptions detect;
    std::string k_flag;
    auto* cmd_detect = app.add_subcommand(
        "detect", "Detect communities in a typed edge-list file");
    cmd_detect->add_option("input", detect.input_path, "typed edge-list file (TSV)")
        ->required();
    cmd_detect->add_option("--restarts", detect.restarts, "independent restarts (kappa)")
        ->capture_default_str();
    cmd_detect->add_option("--seed", detect.seed, "random seed")->capture_default_str();
    int target_k = 0;
    auto* kopt = cmd_detect->add_option("--k", target_k, "fix the number of communities");
    cmd_detect->add_flag("--oracle", detect.oracle,
                         "also report the exhaustive optimum (at most 12 nodes)");
    cmd_detect->add_option("--out", detect.out_path, "output path (default: stdout)");
    cmd_detect->add_option("--format", detect.format, "json or csv")->capture_default_str();

    hetnet::cli::SimulateOptions sim;
    std::string grid_text = "0.05:0.025:0.15";
    auto* cmd_sim = app.add_subcommand("simulate", "Run a simulation-study sweep");
    cmd_sim->add_option("--setting", sim.setting, "simulation setting (1, 2, or 3)")
        ->required();
    cmd_sim->add_option("--r3-grid", grid_text, "comma list or lo:step:hi")
        ->capture_default_str();
    cmd_sim->add_option("--reps", sim.reps, "networks per grid point")->capture_default_str();
    cmd_sim->add_option("--seed", sim.seed, "random seed")->capture_default_str();
    cmd_sim->add_option("--restarts", sim.restarts, "restarts per detection run")
        ->capture_default_str();
    cmd_sim->add_option("--n1-per-community", sim.n1_per_community,
                        "type-1 nodes per community")
        ->capture_default_str();
    cmd_sim->add_option("--n2-per-community", sim.n2_per_community,
                        "type-2 nodes per community")
        ->capture_default_str();
    cmd_sim->add_option("--out", sim.out_path, "CSV output path (default: stdout)");

    hetnet::cli::CheckOptions check;
    auto* cmd_check = app.add_subcommand(
        "check", "Evaluate blockmodel consistency conditions for a spec file");
    cmd_check->add_option("spec", check.spec_path, "flat key = value spec file")->required();

    CLI11_PARSE(app, argc, argv);

    if (cmd_detect->parsed()) {
        if (kopt->count() > 0) detect.target_k = target_k;
        return hetnet::cli::run_detect(detect, std::cout, std::cerr);
    }
    if (cmd_sim->parsed()) {
        try {
            sim.r3_grid = hetnet::cli::parse_grid(grid_text);
        } catch (const std::exception& e) {
            std::cerr << "simulate: " << e.what() << "\n";
            return hetnet::cli::kExitBadFlags;
        }
        return hetnet::cli::run_simulate(sim, std::cout, std::cerr);
    }
    return hetnet::cli::run_check(check, std::cout, std::cerr);
}
