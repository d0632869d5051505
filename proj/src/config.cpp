#include "paleo/config.hpp"

#include <fstream>

namespace paleo::cli {

using nlohmann::ordered_json;

namespace {

// Pulls known keys out of `j`; done() complains about leftovers so a typo
// cannot silently fall back to a default.
class KeyChecker {
  public:
    KeyChecker(const ordered_json& j, std::string scope) : j_(j), scope_(std::move(scope)) {
        if (!j.is_object()) {
            throw ConfigError("config: " + scope_ + " must be an object");
        }
    }

    template <typename T>
    void get(const char* key, T& out) {
        if (auto it = j_.find(key); it != j_.end()) {
            try {
                out = it->get<T>();
            } catch (const ordered_json::exception&) {
                throw ConfigError("config: bad value for " + scope_ + "." + key);
            }
            seen_.push_back(key);
        }
    }

    ordered_json child(const char* key) {
        if (auto it = j_.find(key); it != j_.end()) {
            seen_.push_back(key);
            return *it;
        }
        return ordered_json::object();
    }

    void done() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            bool known = false;
            for (const auto& s : seen_) {
                if (s == it.key()) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                throw ConfigError("config: unknown key " + scope_ + "." + it.key());
            }
        }
    }

  private:
    const ordered_json& j_;
    std::string scope_;
    std::vector<std::string> seen_;
};

void load_mode_std(KeyChecker& parent, const char* key, double& mode, double& std,
                   const std::string& scope) {
    ordered_json m = parent.child(key);
    KeyChecker k(m, scope);
    k.get("mode", mode);
    k.get("std", std);
    k.done();
}

}  // namespace

model::TimeGrid RunConfig::make_grid() const {
    try {
        return model::TimeGrid(grid_start_year, grid_end_year, grid_bin_width,
                               grid_observation_year);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

model::PriorSpec RunConfig::make_priors(const model::TimeGrid& grid) const {
    try {
        return model::build_priors(grid, priors);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

model::ModelParams RunConfig::make_truth(const model::TimeGrid& grid) const {
    model::ModelParams truth;
    if (truth_trajectory.empty()) {
        truth.populations.resize(grid.n_bins());
        for (std::size_t i = 0; i < grid.n_bins(); ++i) {
            truth.populations[i] =
                model::prior_mode_curve(grid.midpoint(i), priors.anchor_early, priors.anchor_late);
        }
    } else if (truth_trajectory.size() == grid.n_bins()) {
        truth.populations = truth_trajectory;
    } else {
        throw ConfigError("config: truth.trajectory length does not match the grid");
    }
    truth.loss_rate = truth_loss_rate;
    truth.scaling_factor = truth_scaling_factor;
    truth.scaling_exponent = truth_scaling_exponent;
    truth.sampling_prob = truth_sampling_prob;
    return truth;
}

ordered_json RunConfig::to_json() const {
    return ordered_json{
        {"grid",
         {{"start_year", grid_start_year},
          {"end_year", grid_end_year},
          {"bin_width", grid_bin_width},
          {"observation_year", grid_observation_year}}},
        {"priors",
         {{"population_anchor_early", {{"year", priors.anchor_early.year},
                                       {"population", priors.anchor_early.population}}},
          {"population_anchor_late", {{"year", priors.anchor_late.year},
                                      {"population", priors.anchor_late.population}}},
          {"population_std_factor", priors.population_std_factor},
          {"loss_rate", {{"mode", priors.loss_mode}, {"std", priors.loss_std}}},
          {"scaling_factor", {{"mode", priors.scaling_mode}, {"std", priors.scaling_std}}},
          {"sampling_prob", {{"mode", priors.sampling_mode}, {"std", priors.sampling_std}}}}},
        {"seed", seed},
        {"svi",
         {{"iterations", svi.iterations},
          {"learning_rate", svi.learning_rate},
          {"mc_samples", svi.mc_samples},
          {"elbo_log_stride", svi.elbo_log_stride}}},
        {"mcmc",
         {{"n_samples", mcmc.n_samples},
          {"burn_in", mcmc.burn_in},
          {"proposal_std", mcmc.proposal_std}}},
        {"truth",
         {{"loss_rate", truth_loss_rate},
          {"scaling_factor", truth_scaling_factor},
          {"sampling_prob", truth_sampling_prob},
          {"scaling_exponent", truth_scaling_exponent},
          {"trajectory", truth_trajectory}}},
        {"binning_rule",
         binning_rule == data::BinningRule::HalfOverlap ? "half_overlap" : "any_overlap"},
        {"paths", {{"dataset", dataset_path}, {"output_dir", output_dir}}},
    };
}

RunConfig RunConfig::from_json(const ordered_json& j) {
    RunConfig cfg;
    KeyChecker top(j, "top");

    {
        ordered_json g = top.child("grid");
        KeyChecker k(g, "grid");
        k.get("start_year", cfg.grid_start_year);
        k.get("end_year", cfg.grid_end_year);
        k.get("bin_width", cfg.grid_bin_width);
        k.get("observation_year", cfg.grid_observation_year);
        k.done();
    }
    {
        ordered_json p = top.child("priors");
        KeyChecker k(p, "priors");
        {
            ordered_json a = k.child("population_anchor_early");
            KeyChecker ka(a, "priors.population_anchor_early");
            ka.get("year", cfg.priors.anchor_early.year);
            ka.get("population", cfg.priors.anchor_early.population);
            ka.done();
        }
        {
            ordered_json a = k.child("population_anchor_late");
            KeyChecker ka(a, "priors.population_anchor_late");
            ka.get("year", cfg.priors.anchor_late.year);
            ka.get("population", cfg.priors.anchor_late.population);
            ka.done();
        }
        k.get("population_std_factor", cfg.priors.population_std_factor);
        load_mode_std(k, "loss_rate", cfg.priors.loss_mode, cfg.priors.loss_std,
                      "priors.loss_rate");
        load_mode_std(k, "scaling_factor", cfg.priors.scaling_mode, cfg.priors.scaling_std,
                      "priors.scaling_factor");
        load_mode_std(k, "sampling_prob", cfg.priors.sampling_mode, cfg.priors.sampling_std,
                      "priors.sampling_prob");
        k.done();
    }
    top.get("seed", cfg.seed);
    {
        ordered_json s = top.child("svi");
        KeyChecker k(s, "svi");
        k.get("iterations", cfg.svi.iterations);
        k.get("learning_rate", cfg.svi.learning_rate);
        k.get("mc_samples", cfg.svi.mc_samples);
        k.get("elbo_log_stride", cfg.svi.elbo_log_stride);
        k.done();
        if (cfg.svi.iterations <= 0 || cfg.svi.learning_rate <= 0.0 || cfg.svi.mc_samples <= 0 ||
            cfg.svi.elbo_log_stride <= 0) {
            throw ConfigError("config: svi settings must be positive");
        }
    }
    {
        ordered_json m = top.child("mcmc");
        KeyChecker k(m, "mcmc");
        k.get("n_samples", cfg.mcmc.n_samples);
        k.get("burn_in", cfg.mcmc.burn_in);
        k.get("proposal_std", cfg.mcmc.proposal_std);
        k.done();
        if (cfg.mcmc.n_samples <= 0 || cfg.mcmc.burn_in < 0) {
            throw ConfigError("config: mcmc needs n_samples > 0 and burn_in >= 0");
        }
    }
    {
        ordered_json t = top.child("truth");
        KeyChecker k(t, "truth");
        k.get("loss_rate", cfg.truth_loss_rate);
        k.get("scaling_factor", cfg.truth_scaling_factor);
        k.get("sampling_prob", cfg.truth_sampling_prob);
        k.get("scaling_exponent", cfg.truth_scaling_exponent);
        k.get("trajectory", cfg.truth_trajectory);
        k.done();
    }
    {
        std::string rule = "half_overlap";
        top.get("binning_rule", rule);
        if (rule == "half_overlap") {
            cfg.binning_rule = data::BinningRule::HalfOverlap;
        } else if (rule == "any_overlap") {
            cfg.binning_rule = data::BinningRule::AnyOverlap;
        } else {
            throw ConfigError("config: binning_rule must be half_overlap or any_overlap");
        }
    }
    {
        ordered_json p = top.child("paths");
        KeyChecker k(p, "paths");
        k.get("dataset", cfg.dataset_path);
        k.get("output_dir", cfg.output_dir);
        k.done();
    }
    top.done();

    cfg.svi.seed = cfg.seed;
    cfg.mcmc.seed = dists::RngState(cfg.seed).stream(0x6d636d63).seed;  // "mcmc"
    return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path);
    }
    ordered_json j;
    try {
        in >> j;
    } catch (const ordered_json::exception& e) {
        throw ConfigError("config: " + path + " is not valid JSON: " + e.what());
    }
    return from_json(j);
}

}  // namespace paleo::cli
