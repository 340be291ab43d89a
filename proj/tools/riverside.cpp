// riverside: run the riverbank settlement / park simulation and compare runs.

#include "riverside/cli.hpp"
#include "riverside/types.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace riverside;

    CLI::App app{"Riverbank settlement and city-park waste simulation"};
    app.require_subcommand(1);

    cli::RunOptions run_opts;
    std::string seeds;
    int frame_every = -1;
    auto* run = app.add_subcommand("run", "Run a scenario for one or more seeds");
    run->add_option("--config", run_opts.config, "Config file")->required();
    run->add_option("--out", run_opts.out, "Output directory")->required();
    run->add_option("--seeds", seeds, "Seed list, e.g. 1,2,10-20 (default: config seed)");
    run->add_flag("--force", run_opts.force, "Overwrite existing outputs");
    run->add_option("--frame-every", frame_every, "Write a text frame every N ticks (0 disables)")
        ->check(CLI::NonNegativeNumber);

    cli::CompareOptions cmp_opts;
    auto* compare = app.add_subcommand("compare", "Compare prepark and park metrics CSVs");
    compare->add_option("--pre", cmp_opts.pre_glob, "Glob of prepark metrics CSVs")->required();
    compare->add_option("--post", cmp_opts.post_glob, "Glob of park metrics CSVs")->required();
    compare->add_option("--out", cmp_opts.out, "Output directory")->required();
    compare->add_flag("--force", cmp_opts.force, "Overwrite existing report");

    cli::ValidateOptions val_opts;
    auto* validate = app.add_subcommand("validate", "Check a config (and its map) without running");
    auto* config_opt = validate->add_option("--config", val_opts.config, "Config file");
    validate->add_flag("--print-defaults", val_opts.print_defaults, "Print every default parameter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kOk : cli::kConfigError;
    }

    try {
        if (*run) {
            if (!seeds.empty()) run_opts.seeds = cli::parse_seed_list(seeds);
            if (frame_every >= 0) run_opts.frame_every = frame_every;
            return cli::cmd_run(run_opts, std::cout, std::cerr);
        }
        if (*compare) return cli::cmd_compare(cmp_opts, std::cout, std::cerr);
        if (*validate) {
            if (!val_opts.print_defaults && config_opt->count() == 0) {
                std::cerr << "validate: --config is required unless --print-defaults is given\n";
                return cli::kConfigError;
            }
            return cli::cmd_validate(val_opts, std::cout, std::cerr);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kFailure;
    }
    return cli::kOk;
}
