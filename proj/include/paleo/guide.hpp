#pragma once

#include <span>
#include <vector>

#include "paleo/model.hpp"

namespace paleo::infer {

/// Mean-field variational guide: log-normal marginals for each population bin
/// and for loss rate and scaling factor, logit-normal for the sampling
/// probability. Latent order is [N_0 .. N_{T-1}, loss, scaling, sampling];
/// the last coordinate lives in logit space, all others in log space.
struct GuideState {
    std::vector<double> locations;
    std::vector<double> scales;  // > 0
    std::size_t n_bins = 0;

    std::size_t dim() const { return locations.size(); }

    /// Unconstrained optimizer vector: [locations..., ln(scales)...].
    std::vector<double> flatten() const;
    static GuideState unflatten(std::span<const double> theta, std::size_t n_bins);
};

/// Guide with locations at the prior modes (log/logit space) and every scale
/// at 0.5.
GuideState init_guide(const model::PriorSpec& priors);

/// Deterministic reparameterization (guide, eps) -> latents; strictly
/// monotone in each eps coordinate (away from the overflow clamps).
model::ModelParams sample_latents(const GuideState& guide, std::span<const double> eps);

/// log q(z) evaluated through the sampling path: standard-normal density of
/// eps minus the log-Jacobian of the transforms.
double guide_log_density(const GuideState& guide, const model::ModelParams& params,
                         std::span<const double> eps);

/// Per-latent guide modes: exp(location - scale^2) for log-normal
/// coordinates; the logit-normal mode of the sampling probability is found
/// by grid scan plus golden-section refinement.
model::ModelParams map_estimate(const GuideState& guide);

/// Mode of the logit-normal density on (0,1); may sit off-center because the
/// density can be bimodal for large scales (the global mode is returned).
double logit_normal_mode(double location, double scale);

}  // namespace paleo::infer
