#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "paleo/commands.hpp"

namespace {

// Seed precedence: --seed flag, then PALEO_SEED, then the config file.
void apply_seed_overrides(paleo::cli::RunConfig& cfg, bool seed_flag_given,
                          std::uint64_t seed_flag) {
    if (seed_flag_given) {
        cfg.seed = seed_flag;
    } else if (const char* env = std::getenv("PALEO_SEED")) {
        try {
            cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
            throw paleo::cli::ConfigError("PALEO_SEED is not a valid integer");
        }
    } else {
        return;
    }
    cfg.svi.seed = cfg.seed;
    cfg.mcmc.seed = paleo::dists::RngState(cfg.seed).stream(0x6d636d63).seed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian paleodemographic inference from settlement counts"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed_flag = 0;
    bool seed_given = false;
    std::string out_dir, dataset;
    int iterations = 0;
    bool quick = false;
    std::string band = "iqr";

    app.add_option("--config", config_path, "JSON config file (defaults match the Cyprus run)")
        ->check(CLI::ExistingFile);
    auto* seed_opt = app.add_option("--seed", seed_flag, "seed override");
    app.add_option("--out", out_dir, "output directory override");
    app.add_option("--dataset", dataset, "dataset CSV path override");

    auto* sim = app.add_subcommand("simulate", "generate a synthetic dataset from the truth config");
    auto* fit = app.add_subcommand("fit", "fit the posterior by stochastic variational inference");
    fit->add_option("--iterations", iterations, "SVI iteration override");
    auto* rep = app.add_subcommand("report", "render SVG figures from fit artifacts");
    rep->add_option("--band", band, "shaded band (iqr only in this release)");
    auto* ver = app.add_subcommand("verify", "run the verification oracle suite");
    ver->add_flag("--quick", quick, "gradient check only");

    CLI11_PARSE(app, argc, argv);
    seed_given = seed_opt->count() > 0;

    try {
        paleo::cli::RunConfig cfg = config_path.empty()
                                        ? paleo::cli::RunConfig{}
                                        : paleo::cli::RunConfig::load_file(config_path);
        apply_seed_overrides(cfg, seed_given, seed_flag);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (!dataset.empty()) cfg.dataset_path = dataset;
        if (iterations > 0) cfg.svi.iterations = iterations;

        if (sim->parsed()) return paleo::cli::cmd_simulate(cfg);
        if (fit->parsed()) return paleo::cli::cmd_fit(cfg);
        if (rep->parsed()) {
            if (band != "iqr") {
                std::cerr << "error: only --band iqr is supported in this release\n";
                return paleo::cli::kExitInput;
            }
            return paleo::cli::cmd_report(cfg);
        }
        if (ver->parsed()) return paleo::cli::cmd_verify(cfg, quick);
    } catch (const paleo::cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return paleo::cli::kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return paleo::cli::kExitInput;
    }
    return paleo::cli::kExitInput;
}
