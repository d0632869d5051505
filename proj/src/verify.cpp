#include "paleo/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "paleo/data.hpp"
#include "paleo/mcmc.hpp"
#include "paleo/special.hpp"
#include "paleo/summary.hpp"

namespace paleo::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// Per-latent posterior means of a fitted guide, natural space.
std::vector<double> guide_means(const infer::GuideState& g, const model::TimeGrid& grid) {
    report::PosteriorSummary s = report::summarize_guide(g, grid);
    std::vector<double> means;
    for (const auto& row : s.trajectory) means.push_back(row.mean);
    for (const auto& p : s.parameters) means.push_back(p.mean);
    return means;
}

}  // namespace

model::Posterior five_bin_instance() {
    model::TimeGrid grid(-400, 100, 100, 2022);
    model::PriorConfig prior_cfg;
    model::PriorSpec priors = model::build_priors(grid, prior_cfg);

    data::SyntheticTruth truth;
    truth.params.populations.resize(grid.n_bins());
    for (std::size_t i = 0; i < grid.n_bins(); ++i) {
        truth.params.populations[i] =
            model::prior_mode_curve(grid.midpoint(i), prior_cfg.anchor_early, prior_cfg.anchor_late);
    }
    truth.params.loss_rate = 0.00065;
    truth.params.scaling_factor = 25.78;
    truth.params.scaling_exponent = 1.0;
    truth.params.sampling_prob = 0.01;
    truth.seed = 20240531;

    dists::RngState rng(truth.seed);
    model::ObservedCounts counts = data::simulate_dataset(truth, grid, rng);
    return model::Posterior{counts, priors, grid, true};
}

CheckResult gradient_fd_check() {
    auto t0 = Clock::now();
    model::Posterior target = five_bin_instance();

    infer::GuideState guide = infer::init_guide(target.priors);
    // Nudge the guide off the initialization so no coordinate sits at a
    // symmetric point; deterministic perturbation.
    for (std::size_t i = 0; i < guide.dim(); ++i) {
        guide.locations[i] += 0.15 * std::sin(1.0 + 2.0 * static_cast<double>(i));
        guide.scales[i] = 0.3 + 0.05 * static_cast<double>(i % 4);
    }

    const int n_samples = 64;
    const std::uint64_t seed = 99;
    dists::RngState rng(seed);
    std::vector<double> grad = infer::elbo_gradient(guide, target, n_samples, rng);

    std::vector<double> theta = guide.flatten();
    double worst = 0.0;
    std::size_t worst_idx = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        double h = 1e-4 * std::max(1.0, std::abs(theta[i]));
        auto eval = [&](double v) {
            std::vector<double> t = theta;
            t[i] = v;
            infer::GuideState gs = infer::GuideState::unflatten(t, guide.n_bins);
            dists::RngState r(seed);  // common random numbers
            return infer::elbo_estimate(gs, target, n_samples, r);
        };
        double fd = (eval(theta[i] + h) - eval(theta[i] - h)) / (2.0 * h);
        double rel = std::abs(grad[i] - fd) / std::max({std::abs(grad[i]), std::abs(fd), 1e-8});
        if (rel > worst) {
            worst = rel;
            worst_idx = i;
        }
    }

    CheckResult res;
    res.name = "gradient_finite_difference";
    res.threshold = 1e-4;
    res.measured = worst;
    res.pass = worst <= res.threshold;
    res.seconds = seconds_since(t0);
    res.detail = "max relative error " + fmt(worst) + " at flattened index " +
                 std::to_string(worst_idx) + " (S=64, common random numbers)";
    return res;
}

CheckResult svi_mcmc_check() {
    auto t0 = Clock::now();
    model::Posterior target = five_bin_instance();
    const std::size_t d = target.n_latents();
    const std::size_t nb = target.grid.n_bins();

    infer::SviConfig svi_cfg;
    svi_cfg.iterations = 25000;
    svi_cfg.mc_samples = 32;
    svi_cfg.seed = 4242;
    infer::FitResult fit = infer::fit_svi(target, svi_cfg);
    std::vector<double> svi_means = guide_means(fit.guide, target.grid);

    // Pilot chain proposes with the guide scales, then the main chain uses
    // the pilot's transformed-space stds scaled by 2.4/sqrt(d).
    infer::McmcConfig pilot_cfg;
    pilot_cfg.n_samples = 20000;
    pilot_cfg.burn_in = 4000;
    pilot_cfg.proposal_std = fit.guide.scales;
    pilot_cfg.seed = 5151;
    infer::McmcResult pilot = infer::mh_sample(target, pilot_cfg);

    std::vector<double> tuned(d);
    for (std::size_t c = 0; c < d; ++c) {
        double sum = 0.0, ss = 0.0;
        for (std::size_t r = 0; r < pilot.samples.rows; ++r) {
            double x = pilot.samples.at(r, c);
            double w = c < nb + 2 ? std::log(x) : dists::logit(x);
            sum += w;
            ss += w * w;
        }
        double n = static_cast<double>(pilot.samples.rows);
        double var = std::max(1e-12, ss / n - (sum / n) * (sum / n));
        tuned[c] = 2.4 / std::sqrt(static_cast<double>(d)) * std::sqrt(var);
    }

    infer::McmcConfig main_cfg;
    main_cfg.n_samples = 250000;
    main_cfg.burn_in = 25000;
    main_cfg.proposal_std = tuned;
    main_cfg.seed = 6262;
    infer::McmcResult chain = infer::mh_sample(target, main_cfg);

    double worst = 0.0;
    std::size_t worst_idx = 0;
    for (std::size_t c = 0; c < d; ++c) {
        double sum = 0.0, ss = 0.0;
        for (std::size_t r = 0; r < chain.samples.rows; ++r) sum += chain.samples.at(r, c);
        double mean = sum / static_cast<double>(chain.samples.rows);
        for (std::size_t r = 0; r < chain.samples.rows; ++r) {
            double x = chain.samples.at(r, c) - mean;
            ss += x * x;
        }
        double sd = std::sqrt(ss / static_cast<double>(chain.samples.rows));
        double z = std::abs(svi_means[c] - mean) / sd;
        if (z > worst) {
            worst = z;
            worst_idx = c;
        }
    }

    CheckResult res;
    res.name = "svi_mcmc_agreement";
    res.threshold = 0.5;
    res.measured = worst;
    res.pass = worst <= res.threshold && chain.warning.empty();
    res.seconds = seconds_since(t0);
    res.detail = "max |mean_svi - mean_mcmc| / std_mcmc = " + fmt(worst) + " at latent " +
                 std::to_string(worst_idx) + "; acceptance " + fmt(chain.acceptance_rate) +
                 (chain.warning.empty() ? "" : "; " + chain.warning);
    return res;
}

CheckResult coverage_check(int replicates) {
    auto t0 = Clock::now();
    model::TimeGrid grid(-11000, 1000, 100, 2022);
    model::PriorConfig prior_cfg;
    model::PriorSpec priors = model::build_priors(grid, prior_cfg);
    const std::size_t nb = grid.n_bins();

    long long covered = 0, total = 0;
    long long covered_traj = 0, covered_shared[3] = {0, 0, 0};

    dists::RngState base(0xC0FFEE);
    for (int rep = 0; rep < replicates; ++rep) {
        dists::RngState rng = base.stream(static_cast<std::uint64_t>(rep));

        model::ModelParams truth;
        truth.populations.resize(nb);
        for (std::size_t i = 0; i < nb; ++i) {
            const auto& pr = priors.population_priors[i];
            truth.populations[i] = dists::sample_gamma(rng, pr.shape, pr.rate);
        }
        truth.loss_rate =
            dists::sample_gamma(rng, priors.loss_prior.shape, priors.loss_prior.rate);
        truth.scaling_factor =
            dists::sample_gamma(rng, priors.scaling_prior.shape, priors.scaling_prior.rate);
        truth.scaling_exponent = 1.0;
        truth.sampling_prob =
            dists::sample_beta(rng, priors.sampling_prior.alpha, priors.sampling_prior.beta);

        data::SyntheticTruth syn{truth, 0};
        model::ObservedCounts counts = data::simulate_dataset(syn, grid, rng);

        infer::SviConfig cfg;
        cfg.seed = 7000 + static_cast<std::uint64_t>(rep);
        infer::FitResult fit = infer::fit_svi(counts, priors, grid, cfg);

        const auto& g = fit.guide;
        const double z90 = dists::normal_quantile(0.95);
        auto in_log_interval = [&](std::size_t i, double value) {
            double lo = std::exp(g.locations[i] - z90 * g.scales[i]);
            double hi = std::exp(g.locations[i] + z90 * g.scales[i]);
            return value >= lo && value <= hi;
        };
        for (std::size_t i = 0; i < nb; ++i) {
            bool hit = in_log_interval(i, truth.populations[i]);
            covered += hit;
            covered_traj += hit;
            ++total;
        }
        bool hit_l = in_log_interval(nb, truth.loss_rate);
        bool hit_a = in_log_interval(nb + 1, truth.scaling_factor);
        double plo = dists::sigmoid(g.locations[nb + 2] - z90 * g.scales[nb + 2]);
        double phi = dists::sigmoid(g.locations[nb + 2] + z90 * g.scales[nb + 2]);
        bool hit_p = truth.sampling_prob >= plo && truth.sampling_prob <= phi;
        covered += hit_l + hit_a + hit_p;
        covered_shared[0] += hit_l;
        covered_shared[1] += hit_a;
        covered_shared[2] += hit_p;
        total += 3;
    }

    double frac = static_cast<double>(covered) / static_cast<double>(total);
    CheckResult res;
    res.name = "coverage";
    res.threshold = 0.60;  // lower edge; upper edge 1.0 is unreachable from below
    res.measured = frac;
    res.pass = frac >= 0.60 && frac <= 1.00;
    res.seconds = seconds_since(t0);
    double reps = static_cast<double>(replicates);
    res.detail = "covered " + fmt(frac) + " of (replicate x latent) pairs; per latent: trajectory " +
                 fmt(static_cast<double>(covered_traj) / (reps * static_cast<double>(nb))) +
                 ", loss " + fmt(static_cast<double>(covered_shared[0]) / reps) + ", scaling " +
                 fmt(static_cast<double>(covered_shared[1]) / reps) + ", sampling " +
                 fmt(static_cast<double>(covered_shared[2]) / reps);
    return res;
}

}  // namespace paleo::verify
