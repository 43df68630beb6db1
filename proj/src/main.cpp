#include "irdecoh/config.hpp"
#include "irdecoh/parallel.hpp"
#include "irdecoh/run.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"irdecoh: infrared-radiation decoherence simulator for "
                 "electron-neutrino scattering"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    int threads = 1;
    bool verbose = false, have_seed = false;
    app.add_option("--config", config_path, "run configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (overrides [output] dir)");
    app.add_option("--seed", seed, "master seed (overrides [mc] seed)")
        ->each([&](const std::string&) { have_seed = true; });
    app.add_option("--threads", threads, "worker thread count")
        ->check(CLI::PositiveNumber);
    app.add_flag("--verbose", verbose, "progress output");

    const std::vector<std::string> names = {"spectrum",    "overlap",
                                            "decoherence-scan", "fock-verify",
                                            "weak-xsec",   "restoration-mc",
                                            "all"};
    // fallthrough() lets the global options appear after the subcommand too.
    for (const auto& n : names) app.add_subcommand(n)->fallthrough();

    CLI11_PARSE(app, argc, argv);
    const std::string sub = app.get_subcommands().front()->get_name();

    irdecoh::RunConfig cfg;
    try {
        cfg = irdecoh::parse_config(config_path);
    } catch (const irdecoh::ConfigError& e) {
        std::cerr << "irdecoh: config error: " << e.what() << "\n";
        return 2;
    }
    if (!out_dir.empty()) cfg.output.dir = out_dir;
    if (have_seed) cfg.mc.seed = seed;
    cfg.threads = threads;
    cfg.verbose = verbose;
    irdecoh::set_thread_count(threads);

    try {
        return irdecoh::run_subcommand(sub, cfg);
    } catch (const irdecoh::ConfigError& e) {
        std::cerr << "irdecoh: config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "irdecoh " << sub << ": error: " << e.what() << "\n";
        return 1;
    }
}
