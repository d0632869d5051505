#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "paleo/mcmc.hpp"
#include "paleo/verify.hpp"

using namespace paleo;

namespace {

model::Posterior prior_only_five_bin() {
    model::Posterior target = verify::five_bin_instance();
    target.use_likelihood = false;
    return target;
}

// Mean and batch-means standard error of one sample column.
oracles::MeanSe column_mean_se(const infer::SampleMatrix& m, std::size_t col, int batches = 20) {
    std::size_t per = m.rows / batches;
    std::vector<double> bm;
    for (int b = 0; b < batches; ++b) {
        double s = 0.0;
        for (std::size_t r = b * per; r < (b + 1) * per; ++r) s += m.at(r, col);
        bm.push_back(s / static_cast<double>(per));
    }
    return oracles::mean_se(bm);
}

}  // namespace

TEST_CASE("mh_sample recovers prior moments with the likelihood disabled") {
    model::Posterior target = prior_only_five_bin();
    infer::McmcConfig cfg;
    cfg.n_samples = 120000;
    cfg.burn_in = 10000;
    cfg.proposal_std = {0.8};
    cfg.seed = 71;
    cfg.use_likelihood = false;
    infer::McmcResult res = infer::mh_sample(target, cfg);
    CHECK(res.samples.rows == 120000);
    CHECK(res.samples.cols == 8);
    CHECK(res.acceptance_rate > 0.05);
    CHECK(res.acceptance_rate < 0.7);

    // loss rate column: analytic gamma mean shape/rate within 3 batch SEs
    auto ms = column_mean_se(res.samples, 5);
    double want = target.priors.loss_prior.mean();
    CHECK(std::abs(ms.mean - want) <= 3.0 * ms.se);

    // scaling factor column too
    ms = column_mean_se(res.samples, 6);
    CHECK(std::abs(ms.mean - target.priors.scaling_prior.mean()) <= 3.0 * ms.se);
}

TEST_CASE("mh_sample reproduces 3-state discretized probabilities") {
    model::Posterior target = prior_only_five_bin();
    infer::McmcConfig cfg;
    cfg.n_samples = 150000;
    cfg.burn_in = 10000;
    cfg.proposal_std = {0.8};
    cfg.seed = 72;
    cfg.use_likelihood = false;
    infer::McmcResult res = infer::mh_sample(target, cfg);

    // Terciles of the loss-rate prior by quadrature on the gamma pdf.
    const auto& pr = target.priors.loss_prior;
    auto pdf = [&](double x) { return std::exp(dists::log_pdf_gamma(x, pr)); };
    auto cdf = [&](double x) { return oracles::integrate(pdf, 1e-12, x, 1e-12); };
    auto invert = [&](double q) {
        double lo = 1e-10, hi = 0.01;
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            (cdf(mid) < q ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    double t1 = invert(1.0 / 3.0), t2 = invert(2.0 / 3.0);

    double n1 = 0, n2 = 0, n3 = 0;
    for (std::size_t r = 0; r < res.samples.rows; ++r) {
        double lam = res.samples.at(r, 5);
        (lam < t1 ? n1 : lam < t2 ? n2 : n3) += 1.0;
    }
    double n = static_cast<double>(res.samples.rows);
    CHECK(n1 / n == doctest::Approx(1.0 / 3.0).epsilon(0.06));  // 2% absolute
    CHECK(n2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.06));
    CHECK(n3 / n == doctest::Approx(1.0 / 3.0).epsilon(0.06));
}

TEST_CASE("mh_sample determinism and config validation") {
    model::Posterior target = verify::five_bin_instance();
    infer::McmcConfig cfg;
    cfg.n_samples = 2000;
    cfg.burn_in = 500;
    cfg.proposal_std = {0.3};
    cfg.seed = 5;

    infer::McmcResult a = infer::mh_sample(target, cfg);
    infer::McmcResult b = infer::mh_sample(target, cfg);
    CHECK(a.samples.data == b.samples.data);
    CHECK(a.acceptance_rate == b.acceptance_rate);

    infer::McmcConfig bad = cfg;
    bad.proposal_std = {0.1, 0.2};  // neither 1 nor n_latents entries
    CHECK_THROWS_AS(infer::mh_sample(target, bad), std::invalid_argument);
    bad = cfg;
    bad.n_samples = 0;
    CHECK_THROWS_AS(infer::mh_sample(target, bad), std::invalid_argument);
}

TEST_CASE("mh_sample warns on a mistuned proposal") {
    model::Posterior target = verify::five_bin_instance();
    infer::McmcConfig cfg;
    cfg.n_samples = 3000;
    cfg.burn_in = 200;
    cfg.proposal_std = {25.0};  // nearly every proposal lands in the tails
    cfg.seed = 6;
    infer::McmcResult res = infer::mh_sample(target, cfg);
    CHECK(res.acceptance_rate < 0.05);
    CHECK(!res.warning.empty());
}
