#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "superlase/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"superlase: second-order mean-field simulator of a Raman-assisted "
                 "four-level superradiant laser"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int threads = 1;

    for (const char* name : {"steady", "sweep", "spectrum", "linewidth", "pulling", "tlm",
                             "figures"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (default: config output.path)");
        sub->add_option("--threads", threads, "worker threads for independent grid points");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? superlase::exit_usage : superlase::exit_usage;
    }

    try {
        superlase::RunConfig cfg = superlase::load_config(config_path);
        superlase::RunOptions opts;
        opts.out_dir = out_dir;
        opts.threads = threads;
        return superlase::run_command(app.get_subcommands().front()->get_name(), cfg, opts);
    } catch (const superlase::NonConverged& e) {
        std::cerr << "error: " << e.what() << "\n";
        return superlase::exit_nonconverged;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return superlase::exit_usage;
    }
}
