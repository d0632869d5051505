#include "paleo/guide.hpp"

#include <cmath>
#include <stdexcept>

#include "paleo/special.hpp"

namespace paleo::infer {

using dists::LogNormalParams;

std::vector<double> GuideState::flatten() const {
    std::vector<double> theta;
    theta.reserve(2 * dim());
    theta.insert(theta.end(), locations.begin(), locations.end());
    for (double s : scales) theta.push_back(std::log(s));
    return theta;
}

GuideState GuideState::unflatten(std::span<const double> theta, std::size_t n_bins) {
    if (theta.size() % 2 != 0 || theta.size() / 2 != n_bins + 3) {
        throw std::invalid_argument("GuideState::unflatten: bad dimension");
    }
    std::size_t d = theta.size() / 2;
    GuideState g;
    g.n_bins = n_bins;
    g.locations.assign(theta.begin(), theta.begin() + d);
    g.scales.resize(d);
    for (std::size_t i = 0; i < d; ++i) g.scales[i] = std::exp(theta[d + i]);
    return g;
}

GuideState init_guide(const model::PriorSpec& priors) {
    GuideState g;
    g.n_bins = priors.population_priors.size();
    std::size_t d = g.n_bins + 3;
    g.locations.reserve(d);
    for (const auto& pr : priors.population_priors) {
        g.locations.push_back(std::log(pr.mode()));
    }
    g.locations.push_back(std::log(priors.loss_prior.mode()));
    g.locations.push_back(std::log(priors.scaling_prior.mode()));
    g.locations.push_back(dists::logit(priors.sampling_prior.mode()));
    g.scales.assign(d, 0.5);
    return g;
}

model::ModelParams sample_latents(const GuideState& guide, std::span<const double> eps) {
    std::size_t d = guide.dim();
    if (eps.size() != d) {
        throw std::invalid_argument("sample_latents: eps dimension mismatch");
    }
    model::ModelParams params;
    params.populations.resize(guide.n_bins);
    for (std::size_t i = 0; i < guide.n_bins; ++i) {
        params.populations[i] =
            dists::transform_positive(eps[i], {guide.locations[i], guide.scales[i]});
    }
    std::size_t j = guide.n_bins;
    params.loss_rate = dists::transform_positive(eps[j], {guide.locations[j], guide.scales[j]});
    params.scaling_factor =
        dists::transform_positive(eps[j + 1], {guide.locations[j + 1], guide.scales[j + 1]});
    params.scaling_exponent = 1.0;
    params.sampling_prob =
        dists::transform_unit_interval(eps[j + 2], guide.locations[j + 2], guide.scales[j + 2]);
    return params;
}

double guide_log_density(const GuideState& guide, const model::ModelParams& params,
                         std::span<const double> eps) {
    std::size_t d = guide.dim();
    if (eps.size() != d) {
        throw std::invalid_argument("guide_log_density: eps dimension mismatch");
    }
    double lq = 0.0;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        double x = i < guide.n_bins ? params.populations[i]
                   : i == guide.n_bins ? params.loss_rate
                                       : params.scaling_factor;
        lq += -0.5 * eps[i] * eps[i] - 0.5 * dists::kLogTwoPi - std::log(guide.scales[i]) -
              std::log(x);
    }
    double p = params.sampling_prob;
    lq += -0.5 * eps[d - 1] * eps[d - 1] - 0.5 * dists::kLogTwoPi -
          std::log(guide.scales[d - 1]) - std::log(p) - std::log1p(-p);
    return lq;
}

double logit_normal_mode(double location, double scale) {
    // Scan z = logit(p), then golden-section refine around the best cell.
    auto log_density_z = [&](double z) {
        double p = dists::sigmoid(z);
        double u = (z - location) / scale;
        return -0.5 * u * u - std::log(p) - std::log1p(-p);
    };
    const int n = 4000;
    double zlo = location - 10.0 * scale, zhi = location + 10.0 * scale;
    double best = zlo, best_val = log_density_z(zlo);
    for (int i = 1; i <= n; ++i) {
        double z = zlo + (zhi - zlo) * i / n;
        double v = log_density_z(z);
        if (v > best_val) {
            best_val = v;
            best = z;
        }
    }
    double step = (zhi - zlo) / n;
    double a = best - step, b = best + step;
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
    double f1 = log_density_z(x1), f2 = log_density_z(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = log_density_z(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = log_density_z(x1);
        }
    }
    return dists::sigmoid(0.5 * (a + b));
}

model::ModelParams map_estimate(const GuideState& guide) {
    model::ModelParams params;
    params.populations.resize(guide.n_bins);
    auto ln_mode = [](double loc, double sc) { return std::exp(loc - sc * sc); };
    for (std::size_t i = 0; i < guide.n_bins; ++i) {
        params.populations[i] = ln_mode(guide.locations[i], guide.scales[i]);
    }
    std::size_t j = guide.n_bins;
    params.loss_rate = ln_mode(guide.locations[j], guide.scales[j]);
    params.scaling_factor = ln_mode(guide.locations[j + 1], guide.scales[j + 1]);
    params.scaling_exponent = 1.0;
    params.sampling_prob = logit_normal_mode(guide.locations[j + 2], guide.scales[j + 2]);
    return params;
}

}  // namespace paleo::infer
