#include "paleo/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "paleo/export.hpp"
#include "paleo/svg.hpp"
#include "paleo/verify.hpp"

namespace paleo::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kSimulateStream = 0x5e7713;

bool write_file(const fs::path& path, const std::string& contents) {
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << contents;
    return static_cast<bool>(out);
}

bool write_json(const fs::path& path, const ordered_json& j) {
    return write_file(path, j.dump(2) + "\n");
}

int input_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kExitInput;
}

}  // namespace

int cmd_simulate(const RunConfig& cfg) {
    try {
        model::TimeGrid grid = cfg.make_grid();
        data::SyntheticTruth truth{cfg.make_truth(grid), cfg.seed};
        dists::RngState rng = dists::RngState(cfg.seed).stream(kSimulateStream);
        model::ObservedCounts counts = data::simulate_dataset(truth, grid, rng);

        std::ostringstream csv;
        data::write_counts_csv(csv, counts, grid);
        if (!write_file(cfg.dataset_path, csv.str())) {
            return input_error("cannot write " + cfg.dataset_path);
        }

        ordered_json truth_json{
            {"seed", cfg.seed},
            {"config", cfg.to_json()},
            {"truth",
             {{"loss_rate", truth.params.loss_rate},
              {"scaling_factor", truth.params.scaling_factor},
              {"sampling_prob", truth.params.sampling_prob},
              {"scaling_exponent", truth.params.scaling_exponent},
              {"trajectory", truth.params.populations}}},
        };
        fs::path out_dir(cfg.output_dir);
        if (!write_json(out_dir / "truth.json", truth_json)) {
            return input_error("cannot write " + (out_dir / "truth.json").string());
        }
        std::cerr << "simulate: wrote " << cfg.dataset_path << " (" << counts.counts.size()
                  << " bins)\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        return input_error(e.what());
    } catch (const std::exception& e) {
        return input_error(e.what());
    }
}

int cmd_fit(const RunConfig& cfg) {
    try {
        model::TimeGrid grid = cfg.make_grid();
        model::PriorSpec priors = cfg.make_priors(grid);

        std::ifstream in(cfg.dataset_path);
        if (!in) {
            return input_error("cannot open dataset " + cfg.dataset_path);
        }
        model::ObservedCounts counts;
        try {
            counts = data::read_counts_csv(in, grid);
        } catch (const data::ParseError& e) {
            return input_error(cfg.dataset_path + ": " + e.what());
        }

        infer::FitResult fit;
        try {
            fit = infer::fit_svi(counts, priors, grid, cfg.svi);
        } catch (const infer::DivergenceError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitDivergence;
        }
        report::PosteriorSummary summary = report::summarize_guide(fit.guide, grid);

        fs::path out_dir(cfg.output_dir);
        bool ok = write_json(out_dir / "fit.json", report::fit_to_json(fit, cfg.to_json())) &&
                  write_json(out_dir / "summary.json",
                             ordered_json{{"seed", fit.seed},
                                          {"config", cfg.to_json()},
                                          {"summary", report::summary_to_json(summary)}}) &&
                  write_file(out_dir / "trajectory.csv", report::trajectory_csv(summary)) &&
                  write_file(out_dir / "parameters.csv", report::parameters_csv(summary)) &&
                  write_file(out_dir / "elbo_trace.csv", report::elbo_trace_csv(fit));
        if (!ok) {
            return input_error("cannot write fit artifacts under " + cfg.output_dir);
        }
        std::cerr << "fit: " << cfg.svi.iterations << " iterations in " << fit.wall_time_seconds
                  << " s; final ELBO "
                  << (fit.elbo_trace.empty() ? 0.0 : fit.elbo_trace.back().second) << "\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        return input_error(e.what());
    } catch (const std::exception& e) {
        return input_error(e.what());
    }
}

int cmd_report(const RunConfig& cfg) {
    try {
        model::TimeGrid grid = cfg.make_grid();
        fs::path out_dir(cfg.output_dir);

        std::ifstream fit_in(out_dir / "fit.json");
        std::ifstream summary_in(out_dir / "summary.json");
        if (!fit_in || !summary_in) {
            return input_error("missing fit artifacts under " + cfg.output_dir +
                               " (run `paleo fit` first)");
        }
        ordered_json fit_json, summary_json;
        try {
            fit_in >> fit_json;
            summary_in >> summary_json;
        } catch (const ordered_json::exception& e) {
            return input_error(std::string("bad fit artifacts: ") + e.what());
        }

        infer::GuideState guide = report::guide_from_json(fit_json.at("guide"));
        report::PosteriorSummary summary =
            report::summary_from_json(summary_json.at("summary"));

        bool ok = write_file(out_dir / "trajectory.svg",
                             report::render_trajectory_svg(summary, grid)) &&
                  write_file(out_dir / "densities.svg", report::render_density_svg(guide));
        if (!ok) {
            return input_error("cannot write figures under " + cfg.output_dir);
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        return input_error(e.what());
    } catch (const std::exception& e) {
        return input_error(e.what());
    }
}

int cmd_verify(const RunConfig& cfg, bool quick) {
    try {
        std::vector<verify::CheckResult> checks;
        checks.push_back(verify::gradient_fd_check());
        if (!quick) {
            checks.push_back(verify::svi_mcmc_check());
            checks.push_back(verify::coverage_check());
        }

        bool all_pass = true;
        ordered_json rows = ordered_json::array();
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass;
            rows.push_back(ordered_json{{"name", c.name},
                                        {"pass", c.pass},
                                        {"measured", c.measured},
                                        {"threshold", c.threshold},
                                        {"detail", c.detail},
                                        {"seconds", c.seconds}});
            std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
        }

        ordered_json doc{{"config", cfg.to_json()},
                         {"quick", quick},
                         {"all_pass", all_pass},
                         {"checks", rows}};
        if (!write_json(fs::path(cfg.output_dir) / "verify.json", doc)) {
            return input_error("cannot write verify.json under " + cfg.output_dir);
        }
        if (!all_pass) {
            std::cerr << "error: verification failed\n";
            return kExitVerify;
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        return input_error(e.what());
    } catch (const std::exception& e) {
        return input_error(e.what());
    }
}

}  // namespace paleo::cli
