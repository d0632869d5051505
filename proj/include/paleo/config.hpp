#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "paleo/data.hpp"
#include "paleo/mcmc.hpp"
#include "paleo/model.hpp"
#include "paleo/svi.hpp"

namespace paleo::cli {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// One document drives the whole pipeline; unknown keys are rejected so a
/// typo cannot silently fall back to a default. `seed` feeds every
/// subcommand (the MCMC oracle derives its own stream from it).
struct RunConfig {
    int grid_start_year = -11000;
    int grid_end_year = 1000;
    int grid_bin_width = 100;
    int grid_observation_year = 2022;

    model::PriorConfig priors{};

    std::uint64_t seed = 42;
    infer::SviConfig svi{};
    infer::McmcConfig mcmc{};

    // Ground truth for `simulate`; an empty trajectory means "use the prior
    // mode curve at the bin midpoints".
    double truth_loss_rate = 0.00065;
    double truth_scaling_factor = 25.78;
    double truth_sampling_prob = 0.01;
    double truth_scaling_exponent = 1.0;
    std::vector<double> truth_trajectory;

    data::BinningRule binning_rule = data::BinningRule::HalfOverlap;

    std::string dataset_path = "out/dataset.csv";
    std::string output_dir = "out";

    model::TimeGrid make_grid() const;
    model::PriorSpec make_priors(const model::TimeGrid& grid) const;
    model::ModelParams make_truth(const model::TimeGrid& grid) const;

    nlohmann::ordered_json to_json() const;
    static RunConfig from_json(const nlohmann::ordered_json& j);
    static RunConfig load_file(const std::string& path);
};

}  // namespace paleo::cli
