#include "paleo/dists.hpp"

#include <atomic>
#include <cmath>
#include <limits>

namespace paleo::dists {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
std::atomic<std::uint64_t> g_clamp_count{0};

}  // namespace

double GammaParams::stddev() const { return std::sqrt(shape) / rate; }

double BetaParams::variance() const {
    double s = alpha + beta;
    return alpha * beta / (s * s * (s + 1.0));
}

GammaParams gamma_from_mode_std(double mode, double std) {
    if (!(mode > 0.0) || !(std > 0.0) || !std::isfinite(mode) || !std::isfinite(std)) {
        throw std::domain_error("gamma_from_mode_std: mode and std must be positive");
    }
    double rate = (mode + std::sqrt(mode * mode + 4.0 * std * std)) / (2.0 * std * std);
    return GammaParams{1.0 + mode * rate, rate};
}

BetaParams beta_from_mode_std(double mode, double std) {
    if (!(mode > 0.0 && mode < 1.0) || !(std > 0.0)) {
        throw std::domain_error("beta_from_mode_std: need 0 < mode < 1 and std > 0");
    }
    double target = std * std;
    auto variance_at = [mode](double c) {
        BetaParams b{1.0 + mode * c, 1.0 + (1.0 - mode) * c};
        return b.variance();
    };
    // variance(c) decreases from ~1/12 toward 0 as c grows.
    double lo = 1e-6, hi = 1e6;
    if (variance_at(lo) < target || variance_at(hi) > target) {
        throw InfeasibleParameterization(
            "beta_from_mode_std: no alpha,beta > 1 solution for requested mode/std");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-12 * (1.0 + hi); ++i) {
        double mid = 0.5 * (lo + hi);
        if (variance_at(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double c = 0.5 * (lo + hi);
    return BetaParams{1.0 + mode * c, 1.0 + (1.0 - mode) * c};
}

double log_pdf_gamma(double x, const GammaParams& p) {
    if (!(x > 0.0)) return kNegInf;
    return p.shape * std::log(p.rate) - log_gamma_fn(p.shape) +
           (p.shape - 1.0) * std::log(x) - p.rate * x;
}

double log_pdf_beta(double x, const BetaParams& p) {
    if (!(x > 0.0 && x < 1.0)) return kNegInf;
    double norm = log_gamma_fn(p.alpha) + log_gamma_fn(p.beta) -
                  log_gamma_fn(p.alpha + p.beta);
    return (p.alpha - 1.0) * std::log(x) + (p.beta - 1.0) * std::log1p(-x) - norm;
}

double log_pdf_lognormal(double x, const LogNormalParams& p) {
    if (!(x > 0.0)) return kNegInf;
    double lx = std::log(x);
    double z = (lx - p.location) / p.scale;
    return -lx - std::log(p.scale) - 0.5 * kLogTwoPi - 0.5 * z * z;
}

double log_pmf_poisson(long long k, double rate) {
    if (k < 0) {
        throw std::domain_error("log_pmf_poisson: negative count");
    }
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw std::domain_error("log_pmf_poisson: rate must be positive and finite");
    }
    return static_cast<double>(k) * std::log(rate) - rate -
           log_gamma_fn(static_cast<double>(k) + 1.0);
}

double transform_positive(double eps, const LogNormalParams& p) {
    double arg = p.location + p.scale * eps;
    if (arg > kMaxExpArg) {
        arg = kMaxExpArg;
        g_clamp_count.fetch_add(1, std::memory_order_relaxed);
    } else if (arg < -kMaxExpArg) {
        arg = -kMaxExpArg;
        g_clamp_count.fetch_add(1, std::memory_order_relaxed);
    }
    return std::exp(arg);
}

double transform_unit_interval(double eps, double location, double scale) {
    double v = sigmoid(location + scale * eps);
    if (v < kUnitClamp) {
        v = kUnitClamp;
        g_clamp_count.fetch_add(1, std::memory_order_relaxed);
    } else if (v > 1.0 - kUnitClamp) {
        v = 1.0 - kUnitClamp;
        g_clamp_count.fetch_add(1, std::memory_order_relaxed);
    }
    return v;
}

std::uint64_t transform_clamp_count() {
    return g_clamp_count.load(std::memory_order_relaxed);
}

void reset_transform_clamp_count() {
    g_clamp_count.store(0, std::memory_order_relaxed);
}

double lognormal_quantile(const LogNormalParams& p, double q) {
    return std::exp(p.location + p.scale * normal_quantile(q));
}

double logit_normal_quantile(double location, double scale, double q) {
    return sigmoid(location + scale * normal_quantile(q));
}

}  // namespace paleo::dists
