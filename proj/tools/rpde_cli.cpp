#include <cstdio>
#include <string>

#include <CLI11.hpp>

#if defined(RPDE_HAVE_OPENMP)
#include <omp.h>
#endif

#include "rpde/harness.hpp"

namespace {

int execute(const std::string& experiment, const std::string& config_path, bool seed_set,
            std::uint64_t seed, bool out_set, const std::string& out, int threads) {
    rpde::ExperimentConfig cfg;
    if (!config_path.empty()) {
        try {
            cfg = rpde::ExperimentConfig::from_file(config_path);
        } catch (const rpde::ConfigError& e) {
            std::fprintf(stderr, "config error: %s\n", e.what());
            return 2;
        }
    }
    cfg.experiment = experiment;  // the subcommand wins over the file
    if (seed_set) cfg.seed = seed;
    if (out_set) cfg.out_dir = out;
    if (threads > 0) cfg.threads = threads;
#if defined(RPDE_HAVE_OPENMP)
    omp_set_num_threads(cfg.threads);
#endif
    rpde::RunRecord rec = rpde::run(cfg);
    for (const auto& line : rec.summary) std::printf("%s\n", line.c_str());
    for (const auto& a : rec.artifacts) std::printf("artifact: %s\n", a.c_str());
    return rec.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rough-driver SPDE experiment runner"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    int threads = 0;
    bool seed_set = false, out_set = false;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", seed, "master seed override")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_option("--out", out_dir, "output directory override")->each([&](const std::string&) {
        out_set = true;
    });
    app.add_option("--threads", threads, "thread count (default 1)");

    const char* subs[] = {"lift-check", "solve", "clt", "ito-vs-strat",
                          "wong-zakai", "mdp",   "suite"};
    for (const char* s : subs)
        app.add_subcommand(s, std::string("run the ") + s + " experiment")->fallthrough();

    CLI11_PARSE(app, argc, argv);

    return execute(app.get_subcommands().front()->get_name(), config_path, seed_set, seed,
                   out_set, out_dir, threads);
}
