#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "paleo/model.hpp"
#include "paleo/rng.hpp"

namespace paleo::infer {

/// Row-major matrix of posterior draws; one row per retained sample, one
/// column per latent in guide order (natural space).
struct SampleMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    SampleMatrix() = default;
    SampleMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
};

struct McmcConfig {
    long long n_samples = 200000;  // retained, post burn-in
    long long burn_in = 20000;
    // Per-latent random-walk std in transformed (log/logit) space; a single
    // entry broadcasts to every latent.
    std::vector<double> proposal_std{0.25};
    std::uint64_t seed = 17;
    bool use_likelihood = true;
};

struct McmcResult {
    SampleMatrix samples;
    double acceptance_rate = 0.0;
    std::string warning;  // non-empty when acceptance leaves [0.05, 0.7]
};

/// Random-walk Metropolis over the transformed latents (log space for the
/// positive ones, logit space for the sampling probability), targeting
/// log_joint plus the change-of-variables log-Jacobian. Samples are mapped
/// back to natural space. A small-instance verification oracle: memory and
/// mixing scale poorly past roughly ten bins.
McmcResult mh_sample(const model::ObservedCounts& counts, const model::PriorSpec& priors,
                     const model::TimeGrid& grid, const McmcConfig& config);
McmcResult mh_sample(const model::Posterior& target, const McmcConfig& config);

}  // namespace paleo::infer
