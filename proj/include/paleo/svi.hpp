#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "paleo/adam.hpp"
#include "paleo/guide.hpp"
#include "paleo/rng.hpp"

namespace paleo::infer {

struct SviConfig {
    int iterations = 25000;
    double learning_rate = 0.001;
    int mc_samples = 8;
    std::uint64_t seed = 42;
    int elbo_log_stride = 50;
    bool use_likelihood = true;
    AdamConfig adam{};  // learning_rate is copied in before use
};

struct FitResult {
    GuideState guide;
    std::vector<std::pair<int, double>> elbo_trace;  // (iteration, estimate)
    double wall_time_seconds = 0.0;
    std::uint64_t seed = 0;
    SviConfig config;
    std::uint64_t floor_warnings = 0;  // samples whose joint hit the ELBO floor
};

class DivergenceError : public std::runtime_error {
  public:
    DivergenceError(const std::string& msg, int iteration)
        : std::runtime_error(msg), iteration(iteration) {}
    int iteration;
};

class NonFiniteGradient : public std::runtime_error {
  public:
    NonFiniteGradient(const std::string& msg, std::size_t latent_index)
        : std::runtime_error(msg), latent_index(latent_index) {}
    std::size_t latent_index;
};

/// Monte Carlo ELBO over n_samples reparameterized draws; a sample whose
/// joint is non-finite contributes kElboSampleFloor and bumps the result's
/// warning counter in fit_svi.
double elbo_estimate(const GuideState& guide, const model::ObservedCounts& counts,
                     const model::PriorSpec& priors, const model::TimeGrid& grid,
                     int n_samples, dists::RngState& rng);

/// Pathwise gradient of the same Monte Carlo objective with respect to the
/// flattened guide vector [locations..., ln(scales)...]; consumes the rng
/// exactly as elbo_estimate does, so passing equal states yields common
/// random numbers. Throws NonFiniteGradient if any component is non-finite.
std::vector<double> elbo_gradient(const GuideState& guide, const model::ObservedCounts& counts,
                                  const model::PriorSpec& priors, const model::TimeGrid& grid,
                                  int n_samples, dists::RngState& rng);

inline constexpr double kElboSampleFloor = -1e15;

// Posterior-bundle variants used internally and by the verification oracles.
double elbo_estimate(const GuideState& guide, const model::Posterior& target, int n_samples,
                     dists::RngState& rng);
std::vector<double> elbo_gradient(const GuideState& guide, const model::Posterior& target,
                                  int n_samples, dists::RngState& rng);

/// Runs the elbo_gradient / adam_step loop from the prior-mode initial guide.
/// Deterministic given (config.seed, config); iteration i draws from the
/// substream RngState(seed).stream(i). Declares divergence after 100
/// consecutive non-finite ELBO estimates.
FitResult fit_svi(const model::ObservedCounts& counts, const model::PriorSpec& priors,
                  const model::TimeGrid& grid, const SviConfig& config);
FitResult fit_svi(const model::Posterior& target, const SviConfig& config);

}  // namespace paleo::infer
