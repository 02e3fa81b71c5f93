#include "ppide/config.hpp"
#include "ppide/errors.hpp"
#include "ppide/experiments.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

/// --threads wins over PPIDE_THREADS; both default to 1 worker.
unsigned resolve_threads(long cli_threads) {
    if (cli_threads > 0) {
        return static_cast<unsigned>(cli_threads);
    }
    if (const char* env = std::getenv("PPIDE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) {
            throw ppide::config_error(std::string("PPIDE_THREADS must be a positive integer, got '") +
                                      env + "'");
        }
        return static_cast<unsigned>(v);
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"banded-scheme option pricing under tempered-stable jumps"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string out_file;
    std::vector<std::string> overrides;
    long threads = 0;

    CLI::App* run = app.add_subcommand("run", "run one experiment from a config file");
    run->add_option("--config", config_path, "experiment config file")->required();
    run->add_option("--set", overrides, "override a value as section.key=value")
        ->take_all()
        ->allow_extra_args(false);
    run->add_option("--out", out_dir, "directory for the CSV results")->required();
    run->add_option("--threads", threads, "worker thread cap (default PPIDE_THREADS or 1)");

    CLI::App* table1 = app.add_subcommand("table1", "emit the grid-step table as CSV");
    table1->add_option("--out", out_file, "output CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            ppide::Config cfg = ppide::Config::parse_file(config_path);
            for (const std::string& assignment : overrides) {
                cfg.apply_override(assignment);
            }
            ppide::ExperimentContext ctx;
            ctx.config = std::move(cfg);
            ctx.out_dir = out_dir;
            ctx.threads = resolve_threads(threads);
            for (const auto& path : ppide::run_experiment(ctx)) {
                std::cout << "wrote " << path.string() << "\n";
            }
        } else {
            ppide::emit_table1(out_file);
            std::cout << "wrote " << out_file << "\n";
        }
    } catch (const ppide::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
