#include "paleo/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace paleo::model {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_dims(std::size_t have, std::size_t want, const char* what) {
    if (have != want) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
}

}  // namespace

double prior_mode_curve(double t, const Anchor& early, const Anchor& late) {
    if (!(early.population > 0.0) || !(late.population > 0.0)) {
        throw std::domain_error("prior_mode_curve: anchor populations must be positive");
    }
    if (early.year == late.year) {
        throw std::domain_error("prior_mode_curve: anchor years must be distinct");
    }
    double r = std::log(late.population / early.population) / (late.year - early.year);
    return early.population * std::exp(r * (t - early.year));
}

PriorSpec build_priors(const TimeGrid& grid, const PriorConfig& config) {
    PriorSpec spec;
    spec.population_priors.reserve(grid.n_bins());
    for (std::size_t i = 0; i < grid.n_bins(); ++i) {
        double mode = prior_mode_curve(grid.midpoint(i), config.anchor_early, config.anchor_late);
        double std = config.population_std_equals_mode ? config.population_std_factor * mode
                                                       : config.population_std_factor;
        spec.population_priors.push_back(dists::gamma_from_mode_std(mode, std));
    }
    spec.loss_prior = dists::gamma_from_mode_std(config.loss_mode, config.loss_std);
    spec.scaling_prior = dists::gamma_from_mode_std(config.scaling_mode, config.scaling_std);
    spec.sampling_prior = dists::beta_from_mode_std(config.sampling_mode, config.sampling_std);
    return spec;
}

double survival_fraction(double loss_rate, double dt) {
    return std::exp(-loss_rate * dt);
}

double expected_observed(double population, double scaling_factor, double exponent,
                         double loss_rate, double dt, double sampling_prob) {
    double deposited = exponent == 1.0 ? population / scaling_factor
                                       : std::pow(population / scaling_factor, exponent);
    double mu = deposited * survival_fraction(loss_rate, dt) * sampling_prob;
    return mu > kRateFloor ? mu : kRateFloor;
}

double log_likelihood(const ModelParams& params, const ObservedCounts& counts,
                      const TimeGrid& grid) {
    check_dims(params.populations.size(), grid.n_bins(), "log_likelihood populations");
    check_dims(counts.counts.size(), grid.n_bins(), "log_likelihood counts");
    double total = 0.0;
    for (std::size_t i = 0; i < grid.n_bins(); ++i) {
        double mu = expected_observed(params.populations[i], params.scaling_factor,
                                      params.scaling_exponent, params.loss_rate,
                                      grid.delta_t(i), params.sampling_prob);
        total += dists::log_pmf_poisson(counts.counts[i], mu);
    }
    return total;
}

double log_prior(const ModelParams& params, const PriorSpec& priors) {
    check_dims(params.populations.size(), priors.population_priors.size(),
               "log_prior populations");
    double total = 0.0;
    for (std::size_t i = 0; i < priors.population_priors.size(); ++i) {
        total += dists::log_pdf_gamma(params.populations[i], priors.population_priors[i]);
    }
    total += dists::log_pdf_gamma(params.loss_rate, priors.loss_prior);
    total += dists::log_pdf_gamma(params.scaling_factor, priors.scaling_prior);
    total += dists::log_pdf_beta(params.sampling_prob, priors.sampling_prior);
    return total;
}

double log_joint(const ModelParams& params, const ObservedCounts& counts,
                 const PriorSpec& priors, const TimeGrid& grid) {
    double prior = log_prior(params, priors);
    if (prior == kNegInf) return kNegInf;
    return log_likelihood(params, counts, grid) + prior;
}

JointGradient log_joint_gradient(const ModelParams& params, const ObservedCounts& counts,
                                 const PriorSpec& priors, const TimeGrid& grid,
                                 bool use_likelihood) {
    std::size_t nb = grid.n_bins();
    check_dims(params.populations.size(), nb, "log_joint_gradient populations");
    check_dims(priors.population_priors.size(), nb, "log_joint_gradient priors");
    if (use_likelihood) {
        check_dims(counts.counts.size(), nb, "log_joint_gradient counts");
    }

    JointGradient g;
    g.d_populations.resize(nb);

    double b = params.scaling_exponent;
    double a = params.scaling_factor;
    double lam = params.loss_rate;
    double p = params.sampling_prob;

    for (std::size_t i = 0; i < nb; ++i) {
        const auto& pr = priors.population_priors[i];
        g.d_populations[i] = (pr.shape - 1.0) / params.populations[i] - pr.rate;
    }
    g.d_loss_rate = (priors.loss_prior.shape - 1.0) / lam - priors.loss_prior.rate;
    g.d_scaling_factor = (priors.scaling_prior.shape - 1.0) / a - priors.scaling_prior.rate;
    g.d_sampling_prob = (priors.sampling_prior.alpha - 1.0) / p -
                        (priors.sampling_prior.beta - 1.0) / (1.0 - p);

    if (!use_likelihood) return g;

    for (std::size_t i = 0; i < nb; ++i) {
        double n = params.populations[i];
        double dt = grid.delta_t(i);
        double mu = expected_observed(n, a, b, lam, dt, p);
        if (mu <= kRateFloor) continue;  // clamp active: d mu / d latent = 0
        double resid = static_cast<double>(counts.counts[i]) - mu;
        g.d_populations[i] += b * resid / n;
        g.d_scaling_factor -= b * resid / a;
        g.d_loss_rate -= dt * resid;
        g.d_sampling_prob += resid / p;
    }
    return g;
}

double Posterior::log_density(const ModelParams& params) const {
    if (!use_likelihood) return log_prior(params, priors);
    return log_joint(params, counts, priors, grid);
}

}  // namespace paleo::model
