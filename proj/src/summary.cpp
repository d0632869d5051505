#include "paleo/summary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "paleo/special.hpp"

namespace paleo::report {

namespace {

constexpr const char* kLatentNames[3] = {"loss_rate", "scaling_factor", "sampling_prob"};
constexpr const char* kLatentUnits[3] = {"per year", "persons per settlement", "probability"};

struct Stats {
    double mean, stddev, median, q05, q25, q75, q95;
};

Stats lognormal_stats(double loc, double scale) {
    double mean = std::exp(loc + 0.5 * scale * scale);
    double stddev = mean * std::sqrt(std::expm1(scale * scale));
    auto q = [&](double prob) { return std::exp(loc + scale * dists::normal_quantile(prob)); };
    return {mean, stddev, std::exp(loc), q(0.05), q(0.25), q(0.75), q(0.95)};
}

Stats logit_normal_stats(double loc, double scale) {
    // Mean and std by midpoint quadrature over eps in [-12, 12]; the omitted
    // normal tail mass is ~3e-33.
    const int n = 100000;
    const double lo = -12.0, hi = 12.0;
    const double h = (hi - lo) / n;
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double e = lo + (i + 0.5) * h;
        double w = std::exp(-0.5 * e * e) * h;
        double p = dists::sigmoid(loc + scale * e);
        m1 += w * p;
        m2 += w * p * p;
    }
    double norm = std::sqrt(2.0 * 3.14159265358979323846);
    m1 /= norm;
    m2 /= norm;
    double var = std::max(0.0, m2 - m1 * m1);
    auto q = [&](double prob) {
        return dists::sigmoid(loc + scale * dists::normal_quantile(prob));
    };
    return {m1, std::sqrt(var), q(0.50), q(0.05), q(0.25), q(0.75), q(0.95)};
}

void fill(LatentSummary& out, const Stats& s) {
    out.mean = s.mean;
    out.stddev = s.stddev;
    out.median = s.median;
    out.q05 = s.q05;
    out.q25 = s.q25;
    out.q75 = s.q75;
    out.q95 = s.q95;
}

double quantile_sorted(const std::vector<double>& sorted, double prob) {
    // Linear interpolation between order statistics.
    double h = prob * (static_cast<double>(sorted.size()) - 1.0);
    std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

Stats column_stats(const infer::SampleMatrix& m, std::size_t col) {
    std::vector<double> v(m.rows);
    double sum = 0.0;
    for (std::size_t r = 0; r < m.rows; ++r) {
        v[r] = m.at(r, col);
        sum += v[r];
    }
    double mean = sum / static_cast<double>(m.rows);
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    double stddev = std::sqrt(ss / static_cast<double>(m.rows));
    std::sort(v.begin(), v.end());
    return {mean,
            stddev,
            quantile_sorted(v, 0.50),
            quantile_sorted(v, 0.05),
            quantile_sorted(v, 0.25),
            quantile_sorted(v, 0.75),
            quantile_sorted(v, 0.95)};
}

}  // namespace

PosteriorSummary summarize_guide(const infer::GuideState& guide, const model::TimeGrid& grid) {
    if (guide.n_bins != grid.n_bins()) {
        throw std::invalid_argument("summarize_guide: guide/grid dimension mismatch");
    }
    model::ModelParams map = infer::map_estimate(guide);

    PosteriorSummary out;
    out.trajectory.resize(guide.n_bins);
    for (std::size_t i = 0; i < guide.n_bins; ++i) {
        Stats s = lognormal_stats(guide.locations[i], guide.scales[i]);
        auto& row = out.trajectory[i];
        row.year = grid.midpoint(i);
        row.mean = s.mean;
        row.stddev = s.stddev;
        row.median = s.median;
        row.q05 = s.q05;
        row.q25 = s.q25;
        row.q75 = s.q75;
        row.q95 = s.q95;
        row.map = map.populations[i];
    }

    out.parameters.resize(3);
    std::size_t j = guide.n_bins;
    double map_vals[3] = {map.loss_rate, map.scaling_factor, map.sampling_prob};
    for (int k = 0; k < 3; ++k) {
        auto& ls = out.parameters[k];
        ls.name = kLatentNames[k];
        ls.units = kLatentUnits[k];
        Stats s = k < 2 ? lognormal_stats(guide.locations[j + k], guide.scales[j + k])
                        : logit_normal_stats(guide.locations[j + k], guide.scales[j + k]);
        fill(ls, s);
        ls.map = map_vals[k];
    }
    return out;
}

PosteriorSummary summarize_samples(const infer::SampleMatrix& samples,
                                   const model::Posterior& target) {
    if (samples.rows < 100) {
        throw std::invalid_argument("summarize_samples: need at least 100 samples");
    }
    std::size_t nb = target.grid.n_bins();
    if (samples.cols != nb + 3) {
        throw std::invalid_argument("summarize_samples: column/grid dimension mismatch");
    }

    // MAP draw: the sample with the highest joint log density.
    std::size_t best_row = 0;
    double best = -std::numeric_limits<double>::infinity();
    model::ModelParams z;
    z.populations.resize(nb);
    for (std::size_t r = 0; r < samples.rows; ++r) {
        for (std::size_t i = 0; i < nb; ++i) z.populations[i] = samples.at(r, i);
        z.loss_rate = samples.at(r, nb);
        z.scaling_factor = samples.at(r, nb + 1);
        z.sampling_prob = samples.at(r, nb + 2);
        double lj = target.log_density(z);
        if (lj > best) {
            best = lj;
            best_row = r;
        }
    }

    PosteriorSummary out;
    out.trajectory.resize(nb);
    for (std::size_t i = 0; i < nb; ++i) {
        Stats s = column_stats(samples, i);
        auto& row = out.trajectory[i];
        row.year = target.grid.midpoint(i);
        row.mean = s.mean;
        row.stddev = s.stddev;
        row.median = s.median;
        row.q05 = s.q05;
        row.q25 = s.q25;
        row.q75 = s.q75;
        row.q95 = s.q95;
        row.map = samples.at(best_row, i);
    }
    out.parameters.resize(3);
    for (int k = 0; k < 3; ++k) {
        auto& ls = out.parameters[k];
        ls.name = kLatentNames[k];
        ls.units = kLatentUnits[k];
        fill(ls, column_stats(samples, nb + k));
        ls.map = samples.at(best_row, nb + k);
    }
    return out;
}

}  // namespace paleo::report
