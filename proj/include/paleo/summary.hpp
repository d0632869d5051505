#pragma once

#include <string>
#include <vector>

#include "paleo/guide.hpp"
#include "paleo/mcmc.hpp"

namespace paleo::report {

struct LatentSummary {
    std::string name;
    std::string units;
    double mean = 0.0;
    double stddev = 0.0;
    double median = 0.0;
    double q05 = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
    double q95 = 0.0;
    double map = 0.0;
};

struct TrajectoryRow {
    double year = 0.0;  // bin midpoint
    double mean = 0.0;
    double stddev = 0.0;
    double median = 0.0;
    double q05 = 0.0;
    double q25 = 0.0;
    double q75 = 0.0;
    double q95 = 0.0;
    double map = 0.0;
};

struct PosteriorSummary {
    std::vector<TrajectoryRow> trajectory;        // keyed by bin midpoint year
    std::vector<LatentSummary> parameters;        // loss_rate, scaling_factor, sampling_prob
};

/// Analytic moments/quantiles of the fitted guide. Log-normal coordinates in
/// closed form; logit-normal mean and std by deterministic 1e5-point
/// quadrature; MAP from the per-latent guide modes.
PosteriorSummary summarize_guide(const infer::GuideState& guide, const model::TimeGrid& grid);

/// Empirical summary of posterior draws (natural space, guide column order).
/// MAP is the sample maximizing the target log density. Requires >= 100 rows.
PosteriorSummary summarize_samples(const infer::SampleMatrix& samples,
                                   const model::Posterior& target);

}  // namespace paleo::report
