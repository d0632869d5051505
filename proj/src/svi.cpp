#include "paleo/svi.hpp"

#include <chrono>
#include <cmath>

namespace paleo::infer {

namespace {

struct ElboSample {
    double elbo = 0.0;
    std::uint64_t floor_hits = 0;
};

// Shared core: accumulates the Monte Carlo ELBO and, when grad is non-null,
// the pathwise gradient with respect to [locations..., ln(scales)...].
// Consumes n_samples * dim normal draws from rng in a fixed order.
ElboSample elbo_core(const GuideState& guide, const model::Posterior& target, int n_samples,
                     dists::RngState& rng, std::vector<double>* grad) {
    if (n_samples < 1) {
        throw std::invalid_argument("elbo: n_samples must be >= 1");
    }
    const std::size_t d = guide.dim();
    if (grad) grad->assign(2 * d, 0.0);

    std::vector<double> eps(d);
    ElboSample out;
    double total = 0.0;

    for (int s = 0; s < n_samples; ++s) {
        for (std::size_t i = 0; i < d; ++i) eps[i] = rng.next_normal();
        model::ModelParams z = sample_latents(guide, eps);

        double lj = target.log_density(z);
        bool floored = !std::isfinite(lj);
        if (floored) {
            lj = kElboSampleFloor;
            ++out.floor_hits;
        }
        double lq = guide_log_density(guide, z, eps);
        total += lj - lq;

        if (!grad) continue;
        auto& g = *grad;
        model::JointGradient jg{};
        if (!floored) jg = target.gradient(z);

        for (std::size_t i = 0; i + 1 < d; ++i) {
            double x = i < guide.n_bins ? z.populations[i]
                       : i == guide.n_bins ? z.loss_rate
                                           : z.scaling_factor;
            double sigma = guide.scales[i];
            double arg = guide.locations[i] + sigma * eps[i];
            if (floored || std::abs(arg) > dists::kMaxExpArg) {
                // Transform clamped (or joint floored): only the -ln(sigma)
                // entropy term still moves.
                g[d + i] += 1.0;
                continue;
            }
            double djdx = i < guide.n_bins ? jg.d_populations[i]
                          : i == guide.n_bins ? jg.d_loss_rate
                                              : jg.d_scaling_factor;
            g[i] += djdx * x + 1.0;
            g[d + i] += djdx * x * eps[i] * sigma + 1.0 + sigma * eps[i];
        }
        {
            std::size_t i = d - 1;
            double p = z.sampling_prob;
            double sigma = guide.scales[i];
            if (floored || p <= dists::kUnitClamp || p >= 1.0 - dists::kUnitClamp) {
                g[d + i] += 1.0;
            } else {
                double slope = p * (1.0 - p);
                g[i] += jg.d_sampling_prob * slope + 1.0 - 2.0 * p;
                g[d + i] += jg.d_sampling_prob * slope * eps[i] * sigma + 1.0 +
                            (1.0 - 2.0 * p) * eps[i] * sigma;
            }
        }
    }

    if (grad) {
        for (double& v : *grad) v /= n_samples;
    }
    out.elbo = total / n_samples;
    return out;
}

}  // namespace

double elbo_estimate(const GuideState& guide, const model::Posterior& target, int n_samples,
                     dists::RngState& rng) {
    return elbo_core(guide, target, n_samples, rng, nullptr).elbo;
}

std::vector<double> elbo_gradient(const GuideState& guide, const model::Posterior& target,
                                  int n_samples, dists::RngState& rng) {
    std::vector<double> grad;
    elbo_core(guide, target, n_samples, rng, &grad);
    for (std::size_t i = 0; i < grad.size(); ++i) {
        if (!std::isfinite(grad[i])) {
            std::size_t latent = i % guide.dim();
            throw NonFiniteGradient("elbo_gradient: non-finite component at latent index " +
                                        std::to_string(latent),
                                    latent);
        }
    }
    return grad;
}

double elbo_estimate(const GuideState& guide, const model::ObservedCounts& counts,
                     const model::PriorSpec& priors, const model::TimeGrid& grid,
                     int n_samples, dists::RngState& rng) {
    return elbo_estimate(guide, model::Posterior{counts, priors, grid, true}, n_samples, rng);
}

std::vector<double> elbo_gradient(const GuideState& guide, const model::ObservedCounts& counts,
                                  const model::PriorSpec& priors, const model::TimeGrid& grid,
                                  int n_samples, dists::RngState& rng) {
    return elbo_gradient(guide, model::Posterior{counts, priors, grid, true}, n_samples, rng);
}

FitResult fit_svi(const model::Posterior& target, const SviConfig& config) {
    auto start = std::chrono::steady_clock::now();

    GuideState guide = init_guide(target.priors);
    const std::size_t d = guide.dim();
    std::vector<double> theta = guide.flatten();

    AdamConfig adam_cfg = config.adam;
    adam_cfg.learning_rate = config.learning_rate;
    AdamState adam(2 * d, adam_cfg);

    FitResult result;
    result.seed = config.seed;
    result.config = config;

    dists::RngState base(config.seed);
    std::vector<double> grad;
    int non_finite_streak = 0;

    for (int it = 0; it < config.iterations; ++it) {
        dists::RngState rng = base.stream(static_cast<std::uint64_t>(it));
        ElboSample es = elbo_core(guide, target, config.mc_samples, rng, &grad);
        result.floor_warnings += es.floor_hits;

        bool bad = !std::isfinite(es.elbo);
        for (double gcomp : grad) {
            if (!std::isfinite(gcomp)) {
                bad = true;
                break;
            }
        }
        if (bad) {
            if (++non_finite_streak >= 100) {
                throw DivergenceError("fit_svi: ELBO non-finite for 100 consecutive iterations "
                                      "(last at iteration " +
                                          std::to_string(it) + ")",
                                      it);
            }
        } else {
            non_finite_streak = 0;
            theta = adam_step(adam, grad, theta);
            guide = GuideState::unflatten(theta, guide.n_bins);
        }

        if ((it + 1) % config.elbo_log_stride == 0) {
            result.elbo_trace.emplace_back(it + 1, es.elbo);
        }
    }

    result.guide = std::move(guide);
    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

FitResult fit_svi(const model::ObservedCounts& counts, const model::PriorSpec& priors,
                  const model::TimeGrid& grid, const SviConfig& config) {
    return fit_svi(model::Posterior{counts, priors, grid, config.use_likelihood}, config);
}

}  // namespace paleo::infer
