#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "paleo/export.hpp"
#include "paleo/svg.hpp"
#include "paleo/verify.hpp"

using namespace paleo;

namespace {

infer::GuideState fitted_like_guide(std::size_t n_bins) {
    infer::GuideState g;
    g.n_bins = n_bins;
    for (std::size_t i = 0; i < n_bins; ++i) {
        g.locations.push_back(7.0 + 0.02 * static_cast<double>(i));
        g.scales.push_back(0.4 + 0.01 * static_cast<double>(i % 5));
    }
    g.locations.insert(g.locations.end(), {std::log(6.5e-4), std::log(25.0), -3.5});
    g.scales.insert(g.scales.end(), {0.25, 0.6, 0.5});
    return g;
}

}  // namespace

TEST_CASE("summarize_guide analytic moments") {
    model::TimeGrid grid(-500, 0, 100, 2022);
    infer::GuideState g = fitted_like_guide(5);
    report::PosteriorSummary s = report::summarize_guide(g, grid);
    REQUIRE(s.trajectory.size() == 5);
    REQUIRE(s.parameters.size() == 3);
    CHECK(s.trajectory[0].year == doctest::Approx(-450.0));

    // degenerate guide: mean = median = MAP = exp(location)
    infer::GuideState tight = g;
    tight.scales.assign(g.dim(), 1e-9);
    report::PosteriorSummary st = report::summarize_guide(tight, grid);
    CHECK(st.trajectory[2].mean == doctest::Approx(std::exp(g.locations[2])).epsilon(1e-9));
    CHECK(st.trajectory[2].median == doctest::Approx(st.trajectory[2].mean).epsilon(1e-9));
    CHECK(st.trajectory[2].map == doctest::Approx(st.trajectory[2].mean).epsilon(1e-6));
    CHECK(st.trajectory[2].stddev <= 1e-5);

    // lognormal mean/quantiles vs Monte Carlo within 0.5%
    dists::RngState rng(404);
    const int n = 1000000;
    double loc = g.locations[1], sc = g.scales[1];
    std::vector<double> draws(n);
    for (auto& d : draws) d = std::exp(loc + sc * rng.next_normal());
    double sum = 0.0;
    for (double d : draws) sum += d;
    double mc_mean = sum / n;
    std::sort(draws.begin(), draws.end());
    double mc_q25 = draws[static_cast<std::size_t>(0.25 * n)];
    double mc_q75 = draws[static_cast<std::size_t>(0.75 * n)];
    CHECK(s.trajectory[1].mean == doctest::Approx(mc_mean).epsilon(0.005));
    CHECK(s.trajectory[1].q25 == doctest::Approx(mc_q25).epsilon(0.005));
    CHECK(s.trajectory[1].q75 == doctest::Approx(mc_q75).epsilon(0.005));

    // logit-normal mean via quadrature vs Monte Carlo
    double lp = g.locations[7], sp = g.scales[7];
    sum = 0.0;
    for (int i = 0; i < n; ++i) sum += dists::sigmoid(lp + sp * rng.next_normal());
    CHECK(s.parameters[2].mean == doctest::Approx(sum / n).epsilon(0.005));

    // quantile ordering on random guides
    dists::RngState vary(11);
    for (int trial = 0; trial < 50; ++trial) {
        infer::GuideState rg = fitted_like_guide(5);
        for (std::size_t i = 0; i < rg.dim(); ++i) {
            rg.locations[i] += vary.next_normal();
            rg.scales[i] = 0.05 + 2.0 * vary.next_uniform();
        }
        report::PosteriorSummary rs = report::summarize_guide(rg, grid);
        for (const auto& row : rs.trajectory) {
            CHECK(row.q05 <= row.q25);
            CHECK(row.q25 <= row.median);
            CHECK(row.median <= row.q75);
            CHECK(row.q75 <= row.q95);
        }
        for (const auto& p : rs.parameters) {
            CHECK(p.q25 <= p.median);
            CHECK(p.median <= p.q75);
            CHECK(p.stddev >= 0.0);
        }
    }
}

TEST_CASE("summarize_samples") {
    model::Posterior target = verify::five_bin_instance();
    const std::size_t d = target.n_latents();

    // constant columns: zero std, equal quantiles
    infer::SampleMatrix constant(200, d);
    for (std::size_t r = 0; r < 200; ++r) {
        for (std::size_t c = 0; c < d; ++c) constant.at(r, c) = c < d - 1 ? 5.0 : 0.25;
    }
    report::PosteriorSummary cs = report::summarize_samples(constant, target);
    CHECK(cs.trajectory[0].stddev == 0.0);
    CHECK(cs.trajectory[0].q25 == cs.trajectory[0].q75);
    CHECK(cs.parameters[0].map == 5.0);

    // too few samples
    infer::SampleMatrix tiny(50, d);
    CHECK_THROWS_AS(report::summarize_samples(tiny, target), std::invalid_argument);

    // row permutation leaves the summary unchanged
    infer::GuideState g = infer::init_guide(target.priors);
    dists::RngState rng(2025);
    infer::SampleMatrix draws(4000, d);
    std::vector<double> eps(d);
    for (std::size_t r = 0; r < draws.rows; ++r) {
        for (auto& e : eps) e = rng.next_normal();
        model::ModelParams z = infer::sample_latents(g, eps);
        for (std::size_t c = 0; c < d - 3; ++c) draws.at(r, c) = z.populations[c];
        draws.at(r, d - 3) = z.loss_rate;
        draws.at(r, d - 2) = z.scaling_factor;
        draws.at(r, d - 1) = z.sampling_prob;
    }
    report::PosteriorSummary s1 = report::summarize_samples(draws, target);

    infer::SampleMatrix reversed(draws.rows, d);
    for (std::size_t r = 0; r < draws.rows; ++r) {
        for (std::size_t c = 0; c < d; ++c) reversed.at(r, c) = draws.at(draws.rows - 1 - r, c);
    }
    report::PosteriorSummary s2 = report::summarize_samples(reversed, target);
    CHECK(s1.trajectory[3].mean == s2.trajectory[3].mean);
    CHECK(s1.parameters[1].q75 == s2.parameters[1].q75);
    CHECK(s1.parameters[2].map == s2.parameters[2].map);

    // sample summary agrees with the analytic guide summary
    report::PosteriorSummary sg = report::summarize_guide(g, target.grid);
    CHECK(s1.parameters[0].mean ==
          doctest::Approx(sg.parameters[0].mean).epsilon(0.05));
    CHECK(s1.trajectory[2].median ==
          doctest::Approx(sg.trajectory[2].median).epsilon(0.05));
}

TEST_CASE("trajectory SVG") {
    model::TimeGrid grid(-500, 0, 100, 2022);
    infer::GuideState g = fitted_like_guide(5);
    report::PosteriorSummary s = report::summarize_guide(g, grid);

    std::string svg = report::render_trajectory_svg(s, grid);
    CHECK(oracles::well_formed_xml(svg));
    CHECK(svg.find("BCE") != std::string::npos);
    CHECK(report::render_trajectory_svg(s, grid) == svg);  // byte-identical

    // single bin: one band path plus exactly two point markers
    model::TimeGrid one(-100, 0, 100, 2022);
    infer::GuideState g1 = fitted_like_guide(1);
    report::PosteriorSummary s1 = report::summarize_guide(g1, one);
    std::string svg1 = report::render_trajectory_svg(s1, one);
    CHECK(oracles::well_formed_xml(svg1));
    CHECK(oracles::count_occurrences(svg1, "<circle") == 2);
    CHECK(oracles::count_occurrences(svg1, "<path") == 1);

    report::PosteriorSummary empty;
    CHECK_THROWS_AS(report::render_trajectory_svg(empty, grid), std::invalid_argument);
}

TEST_CASE("density SVG") {
    infer::GuideState g = fitted_like_guide(5);
    std::string svg = report::render_density_svg(g);
    CHECK(oracles::well_formed_xml(svg));
    CHECK(oracles::count_occurrences(svg, "<path") == 3);  // three panels
    CHECK(report::render_density_svg(g) == svg);

    // the plotted density integrates to ~1 over each panel's support
    std::size_t j = g.n_bins;
    struct P {
        double loc, sc;
        bool logit;
    } panels[3] = {{g.locations[j], g.scales[j], false},
                   {g.locations[j + 1], g.scales[j + 1], false},
                   {g.locations[j + 2], g.scales[j + 2], true}};
    for (const auto& p : panels) {
        double lo, hi;
        if (p.logit) {
            lo = dists::logit_normal_quantile(p.loc, p.sc, 0.001);
            hi = dists::logit_normal_quantile(p.loc, p.sc, 0.999);
        } else {
            lo = dists::lognormal_quantile({p.loc, p.sc}, 0.001);
            hi = dists::lognormal_quantile({p.loc, p.sc}, 0.999);
        }
        const int n = 256;
        double integral = 0.0, prev = 0.0;
        for (int i = 0; i < n; ++i) {
            double x = lo + (hi - lo) * i / (n - 1);
            double dens;
            if (p.logit) {
                double z = dists::logit(x);
                double u = (z - p.loc) / p.sc;
                dens = std::exp(-0.5 * u * u - 0.5 * dists::kLogTwoPi) / (p.sc * x * (1.0 - x));
            } else {
                dens = std::exp(dists::log_pdf_lognormal(x, {p.loc, p.sc}));
            }
            if (i > 0) integral += 0.5 * (dens + prev) * (hi - lo) / (n - 1);
            prev = dens;
        }
        CHECK(integral == doctest::Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("export tables") {
    model::TimeGrid grid(-500, 0, 100, 2022);
    infer::GuideState g = fitted_like_guide(5);
    report::PosteriorSummary s = report::summarize_guide(g, grid);

    // JSON round-trip preserves every value exactly
    auto j = report::summary_to_json(s);
    report::PosteriorSummary back = report::summary_from_json(
        nlohmann::ordered_json::parse(j.dump()));
    REQUIRE(back.trajectory.size() == s.trajectory.size());
    for (std::size_t i = 0; i < s.trajectory.size(); ++i) {
        CHECK(back.trajectory[i].mean == s.trajectory[i].mean);
        CHECK(back.trajectory[i].q75 == s.trajectory[i].q75);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.parameters[i].map == s.parameters[i].map);
        CHECK(back.parameters[i].units == s.parameters[i].units);
    }

    // CSV shapes and the units column
    std::string traj = report::trajectory_csv(s);
    CHECK(oracles::count_occurrences(traj, "\n") == 6);  // header + 5 bins
    CHECK(traj.rfind("year,mean,map,q25,q75\n", 0) == 0);

    std::string params = report::parameters_csv(s);
    CHECK(params.rfind("name,mean,std,q25,q75,map,units", 0) == 0);
    CHECK(params.find("loss_rate") != std::string::npos);
    CHECK(params.find("per year") != std::string::npos);

    // guide JSON round-trip
    infer::GuideState g2 = report::guide_from_json(report::guide_to_json(g));
    CHECK(g2.locations == g.locations);
    CHECK(g2.scales == g.scales);
}
