#pragma once

#include <cstdint>
#include <vector>

#include "paleo/dists.hpp"
#include "paleo/grid.hpp"

namespace paleo::model {

using dists::BetaParams;
using dists::GammaParams;

/// One complete latent configuration. The scaling exponent is carried but
/// fixed at 1 in this release; it is never inferred.
struct ModelParams {
    std::vector<double> populations;  // persons, one per bin
    double loss_rate = 0.0;           // per year
    double scaling_factor = 1.0;      // persons per settlement
    double scaling_exponent = 1.0;
    double sampling_prob = 0.5;       // in (0,1)
};

struct ObservedCounts {
    std::vector<long long> counts;  // occupied settlements observed per bin
};

struct PriorSpec {
    std::vector<GammaParams> population_priors;  // one per bin
    GammaParams loss_prior;
    GammaParams scaling_prior;
    BetaParams sampling_prior;
};

struct Anchor {
    double year = 0.0;
    double population = 1.0;
};

/// Prior settings, all expressed as (mode, std) plus the two anchor points
/// of the exponential population mode curve. std_equals_mode mirrors the
/// construction where every per-bin population prior has std == mode.
struct PriorConfig {
    Anchor anchor_early{-11000.0, 1000.0};
    Anchor anchor_late{1881.0, 186173.0};
    bool population_std_equals_mode = true;
    double population_std_factor = 1.0;  // std = factor * mode when the flag is set
    double loss_mode = 0.0001;
    double loss_std = 0.0001;
    double scaling_mode = 150.0;
    double scaling_std = 150.0;
    double sampling_mode = 0.1;
    double sampling_std = 0.1;
};

/// Exponential interpolation through both anchors:
/// mode(t) = P0 * exp(r (t - t_early)), r = ln(P1/P0) / (t_late - t_early).
double prior_mode_curve(double t, const Anchor& early, const Anchor& late);

/// Per-bin gamma priors on the mode curve plus the three shared priors.
/// Throws dists::InfeasibleParameterization (via beta_from_mode_std) when the
/// sampling prior settings admit no interior-mode beta.
PriorSpec build_priors(const TimeGrid& grid, const PriorConfig& config);

/// exp(-lambda * dt); survival of deposited material over dt years.
double survival_fraction(double loss_rate, double dt);

/// Expected observed settlement count for one bin:
/// (N/a)^b * exp(-lambda dt) * p, clamped below at kRateFloor.
double expected_observed(double population, double scaling_factor, double exponent,
                         double loss_rate, double dt, double sampling_prob);
inline constexpr double kRateFloor = 1e-12;

double log_likelihood(const ModelParams& params, const ObservedCounts& counts,
                      const TimeGrid& grid);
double log_prior(const ModelParams& params, const PriorSpec& priors);
double log_joint(const ModelParams& params, const ObservedCounts& counts,
                 const PriorSpec& priors, const TimeGrid& grid);

struct JointGradient {
    std::vector<double> d_populations;
    double d_loss_rate = 0.0;
    double d_scaling_factor = 0.0;
    double d_sampling_prob = 0.0;
};

/// Natural-space partial derivatives of log_joint with respect to every
/// inferred latent. Bins whose expected count sits on the rate floor
/// contribute zero likelihood gradient (the clamp is flat).
JointGradient log_joint_gradient(const ModelParams& params, const ObservedCounts& counts,
                                 const PriorSpec& priors, const TimeGrid& grid,
                                 bool use_likelihood = true);

/// Bundles one inference target. With use_likelihood = false the target is
/// the bare prior, which the verification oracles exploit.
struct Posterior {
    ObservedCounts counts;
    PriorSpec priors;
    TimeGrid grid;
    bool use_likelihood = true;

    std::size_t n_latents() const { return grid.n_bins() + 3; }
    double log_density(const ModelParams& params) const;
    JointGradient gradient(const ModelParams& params) const {
        return log_joint_gradient(params, counts, priors, grid, use_likelihood);
    }
};

}  // namespace paleo::model
