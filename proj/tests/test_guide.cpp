#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "paleo/guide.hpp"
#include "paleo/rng.hpp"

using namespace paleo;
using infer::GuideState;

namespace {

model::PriorSpec small_priors() {
    model::TimeGrid grid(-400, 100, 100, 2022);
    return model::build_priors(grid, model::PriorConfig{});
}

}  // namespace

TEST_CASE("init_guide starts at prior modes with scale 0.5") {
    model::PriorSpec priors = small_priors();
    GuideState g = infer::init_guide(priors);
    CHECK(g.dim() == 8);
    CHECK(g.n_bins == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(g.locations[i] ==
              doctest::Approx(std::log(priors.population_priors[i].mode())).epsilon(1e-12));
    }
    CHECK(g.locations[5] == doctest::Approx(std::log(1e-4)).epsilon(1e-9));
    CHECK(g.locations[7] == doctest::Approx(std::log(0.1 / 0.9)).epsilon(1e-9));
    for (double s : g.scales) CHECK(s == 0.5);
}

TEST_CASE("flatten/unflatten round-trip") {
    GuideState g = infer::init_guide(small_priors());
    auto theta = g.flatten();
    CHECK(theta.size() == 16);
    GuideState back = GuideState::unflatten(theta, 5);
    for (std::size_t i = 0; i < g.dim(); ++i) {
        CHECK(back.locations[i] == g.locations[i]);
        CHECK(back.scales[i] == doctest::Approx(g.scales[i]).epsilon(1e-15));
    }
    CHECK_THROWS_AS(GuideState::unflatten(std::vector<double>(7), 2), std::invalid_argument);
}

TEST_CASE("sample_latents central draw and determinism") {
    GuideState g = infer::init_guide(small_priors());
    std::vector<double> eps(g.dim(), 0.0);
    model::ModelParams z = infer::sample_latents(g, eps);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(z.populations[i] == doctest::Approx(std::exp(g.locations[i])).epsilon(1e-12));
    }
    CHECK(z.loss_rate == doctest::Approx(1e-4).epsilon(1e-9));
    CHECK(z.sampling_prob == doctest::Approx(0.1).epsilon(1e-9));

    dists::RngState rng(6);
    for (auto& e : eps) e = rng.next_normal();
    model::ModelParams z1 = infer::sample_latents(g, eps);
    model::ModelParams z2 = infer::sample_latents(g, eps);
    CHECK(z1.populations == z2.populations);
    CHECK(z1.sampling_prob == z2.sampling_prob);

    CHECK_THROWS_AS(infer::sample_latents(g, std::vector<double>(3)), std::invalid_argument);
}

TEST_CASE("sample_latents is monotone per eps coordinate") {
    GuideState g = infer::init_guide(small_priors());
    dists::RngState rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> eps(g.dim());
        for (auto& e : eps) e = rng.next_normal();
        std::size_t coord = rng.next_u64() % g.dim();
        auto value_of = [&](const model::ModelParams& z) {
            if (coord < 5) return z.populations[coord];
            if (coord == 5) return z.loss_rate;
            if (coord == 6) return z.scaling_factor;
            return z.sampling_prob;
        };
        model::ModelParams lo = infer::sample_latents(g, eps);
        eps[coord] += 0.25;
        model::ModelParams hi = infer::sample_latents(g, eps);
        CHECK(value_of(hi) > value_of(lo));
    }
}

TEST_CASE("guide_log_density agrees with analytic marginals") {
    GuideState g = infer::init_guide(small_priors());
    dists::RngState rng(15);
    std::vector<double> eps(g.dim());
    for (auto& e : eps) e = rng.next_normal();
    model::ModelParams z = infer::sample_latents(g, eps);

    double want = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
        want += dists::log_pdf_lognormal(z.populations[i], {g.locations[i], g.scales[i]});
    }
    want += dists::log_pdf_lognormal(z.loss_rate, {g.locations[5], g.scales[5]});
    want += dists::log_pdf_lognormal(z.scaling_factor, {g.locations[6], g.scales[6]});
    // logit-normal density of p
    double zp = dists::logit(z.sampling_prob);
    double u = (zp - g.locations[7]) / g.scales[7];
    want += -0.5 * u * u - 0.5 * dists::kLogTwoPi - std::log(g.scales[7]) -
            std::log(z.sampling_prob) - std::log1p(-z.sampling_prob);

    CHECK(infer::guide_log_density(g, z, eps) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("map_estimate") {
    GuideState g = infer::init_guide(small_priors());

    // tiny scales: MAP collapses to exp(location) / sigmoid(location)
    GuideState tight = g;
    tight.scales.assign(g.dim(), 1e-8);
    model::ModelParams map = infer::map_estimate(tight);
    CHECK(map.populations[0] == doctest::Approx(std::exp(g.locations[0])).epsilon(1e-6));
    CHECK(map.sampling_prob == doctest::Approx(0.1).epsilon(1e-4));

    // log-normal mode identity vs direct grid search of the density
    double loc = g.locations[5], sc = 0.7;
    double analytic = std::exp(loc - sc * sc);
    double best_x = 0.0, best = -1e300;
    for (int i = 0; i <= 200000; ++i) {
        double x = analytic * (0.5 + 1.0 * i / 200000.0);  // scan 0.5..1.5 of analytic mode
        double v = dists::log_pdf_lognormal(x, {loc, sc});
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    CHECK(best_x == doctest::Approx(analytic).epsilon(1e-5));

    // MAP of p always lies inside (0,1), including for bimodal-wide scales
    for (double wide : {0.5, 2.0, 6.0}) {
        GuideState w = g;
        w.scales[7] = wide;
        model::ModelParams m = infer::map_estimate(w);
        CHECK(m.sampling_prob > 0.0);
        CHECK(m.sampling_prob < 1.0);
    }

    // logit-normal mode matches a brute-force scan
    double mode = infer::logit_normal_mode(-1.2, 0.6);
    double scan_best = 0.0, scan_val = -1e300;
    for (int i = 1; i < 400000; ++i) {
        double p = i / 400000.0;
        double zz = dists::logit(p);
        double uu = (zz + 1.2) / 0.6;
        double v = -0.5 * uu * uu - std::log(p) - std::log1p(-p);
        if (v > scan_val) {
            scan_val = v;
            scan_best = p;
        }
    }
    CHECK(mode == doctest::Approx(scan_best).epsilon(1e-4));
}
