#include "paleo/mcmc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "paleo/guide.hpp"
#include "paleo/special.hpp"

namespace paleo::infer {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

model::ModelParams to_natural(const std::vector<double>& w, std::size_t nb) {
    model::ModelParams z;
    z.populations.resize(nb);
    for (std::size_t i = 0; i < nb; ++i) z.populations[i] = std::exp(w[i]);
    z.loss_rate = std::exp(w[nb]);
    z.scaling_factor = std::exp(w[nb + 1]);
    z.scaling_exponent = 1.0;
    z.sampling_prob = dists::sigmoid(w[nb + 2]);
    return z;
}

// Target in transformed space: log_joint + log|J|, J = prod(x_i) * p(1-p).
double transformed_target(const std::vector<double>& w, const model::Posterior& target) {
    std::size_t nb = target.grid.n_bins();
    double log_jac = 0.0;
    for (std::size_t i = 0; i < nb + 2; ++i) {
        if (std::abs(w[i]) > 700.0) return kNegInf;
        log_jac += w[i];
    }
    double p = dists::sigmoid(w[nb + 2]);
    if (p <= 0.0 || p >= 1.0) return kNegInf;
    log_jac += std::log(p) + std::log1p(-p);
    double lj = target.log_density(to_natural(w, nb));
    if (!std::isfinite(lj)) return kNegInf;
    return lj + log_jac;
}

}  // namespace

McmcResult mh_sample(const model::Posterior& target, const McmcConfig& config) {
    if (config.n_samples <= 0 || config.burn_in < 0) {
        throw std::invalid_argument("mh_sample: need n_samples > 0 and burn_in >= 0");
    }
    const std::size_t d = target.n_latents();
    std::vector<double> step(d);
    if (config.proposal_std.size() == 1) {
        step.assign(d, config.proposal_std[0]);
    } else if (config.proposal_std.size() == d) {
        step = config.proposal_std;
    } else {
        throw std::invalid_argument("mh_sample: proposal_std must have 1 or n_latents entries");
    }
    for (double s : step) {
        if (!(s > 0.0)) throw std::invalid_argument("mh_sample: proposal stds must be positive");
    }

    // Start at the prior modes, matching the SVI initialization.
    GuideState init = init_guide(target.priors);
    std::vector<double> w = init.locations;
    double lt = transformed_target(w, target);

    dists::RngState rng(config.seed);
    McmcResult result;
    result.samples = SampleMatrix(static_cast<std::size_t>(config.n_samples), d);

    std::vector<double> proposal(d);
    long long total = config.n_samples + config.burn_in;
    long long accepted = 0;
    std::size_t nb = target.grid.n_bins();

    for (long long it = 0; it < total; ++it) {
        for (std::size_t i = 0; i < d; ++i) {
            proposal[i] = w[i] + step[i] * rng.next_normal();
        }
        double ltp = transformed_target(proposal, target);
        if (std::log(rng.next_uniform()) < ltp - lt) {
            w = proposal;
            lt = ltp;
            ++accepted;
        }
        if (it >= config.burn_in) {
            std::size_t row = static_cast<std::size_t>(it - config.burn_in);
            for (std::size_t i = 0; i < nb + 2; ++i) {
                result.samples.at(row, i) = std::exp(w[i]);
            }
            result.samples.at(row, nb + 2) = dists::sigmoid(w[nb + 2]);
        }
    }

    result.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(total);
    if (result.acceptance_rate < 0.05) {
        result.warning = "acceptance rate below 0.05; shrink proposal_std";
    } else if (result.acceptance_rate > 0.7) {
        result.warning = "acceptance rate above 0.7; widen proposal_std";
    }
    return result;
}

McmcResult mh_sample(const model::ObservedCounts& counts, const model::PriorSpec& priors,
                     const model::TimeGrid& grid, const McmcConfig& config) {
    return mh_sample(model::Posterior{counts, priors, grid, config.use_likelihood}, config);
}

}  // namespace paleo::infer
