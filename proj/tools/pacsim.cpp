#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pac/commands.hpp"
#include "pac/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"pacsim: preferential attachment with choice simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::vector<std::string> sets;
    std::uint64_t seed = 0, replicates = 0, threads = 0;
    auto* o_config = app.add_option("--config", config_path, "key=value config file");
    auto* o_out = app.add_option("--out", out_dir, "output directory (out.dir)");
    auto* o_seed = app.add_option("--seed", seed, "master seed (run.seed)");
    auto* o_reps = app.add_option("--replicates", replicates, "replicates (run.replicates)");
    auto* o_threads = app.add_option("--threads", threads, "worker threads (run.threads)");
    app.add_option("--set", sets, "override key=value; repeatable")->allow_extra_args(false);

    for (const char* name : {"simulate", "backward", "gw", "twocolor", "theory", "check"})
        app.add_subcommand(name)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return pac::exit_config;
    }

    pac::RunConfig cfg;
    try {
        if (*o_config) cfg.load_file(config_path);
        for (const auto& s : sets) cfg.assign(s);
        if (*o_out) cfg.set("out.dir", out_dir);
        if (*o_seed) cfg.set("run.seed", std::to_string(seed));
        if (*o_reps) cfg.set("run.replicates", std::to_string(replicates));
        if (*o_threads) cfg.set("run.threads", std::to_string(threads));
    } catch (const pac::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return pac::exit_config;
    } catch (const pac::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return pac::exit_io;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    return pac::run_command(command, cfg, std::cout, std::cerr);
}
