#include "paleo/special.hpp"

#include <cmath>
#include <stdexcept>

namespace paleo::dists {

namespace {

// Lanczos coefficients for g = 7, kmax = 8 (same set GSL uses).
constexpr double kLanczos7[9] = {
    0.99999999999980993227684700473478,
    676.520368121885098567009190444019,
    -1259.13921672240287047156078755283,
    771.3234287776530788486528258894,
    -176.61502916214059906584551354,
    12.507343278686904814458936853,
    -0.13857109526572011689554707,
    9.984369578019570859563e-6,
    1.50563273514931155834e-7,
};

double lanczos_log_gamma(double x) {
    // Valid for x >= 0.5; Lanczos writes z! so shift by one.
    double z = x - 1.0;
    double ag = kLanczos7[0];
    for (int k = 1; k <= 8; ++k) {
        ag += kLanczos7[k] / (z + k);
    }
    double t = z + 7.5;
    return (z + 0.5) * std::log(t) - t + kLogRootTwoPi + std::log(ag);
}

}  // namespace

double log_gamma_fn(double x) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw std::domain_error("log_gamma_fn: argument must be finite and positive");
    }
    if (x < 0.5) {
        // Gamma(x) = Gamma(x + 1) / x; keeps the series in its sweet spot.
        return lanczos_log_gamma(x + 1.0) - std::log(x);
    }
    return lanczos_log_gamma(x);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.70710678118654752440);
}

double normal_quantile(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        throw std::domain_error("normal_quantile: argument must lie in (0,1)");
    }
    // Acklam's approximation, |relative error| < 1.15e-9 before polishing.
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;

    double x;
    if (q < plow) {
        double u = std::sqrt(-2.0 * std::log(q));
        x = (((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
            ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    } else if (q <= 1.0 - plow) {
        double u = q - 0.5;
        double r = u * u;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * u /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double u = std::sqrt(-2.0 * std::log(1.0 - q));
        x = -(((((c[0] * u + c[1]) * u + c[2]) * u + c[3]) * u + c[4]) * u + c[5]) /
            ((((d[0] * u + d[1]) * u + d[2]) * u + d[3]) * u + 1.0);
    }

    // One Halley step: e = Phi(x) - q, u = e / phi(x).
    double e = normal_cdf(x) - q;
    double u = e * std::sqrt(2.0 * 3.14159265358979323846) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

double logit(double p) {
    if (p < 1e-300) p = 1e-300;
    if (p > 1.0 - 1e-16) p = 1.0 - 1e-16;
    return std::log(p) - std::log1p(-p);
}

}  // namespace paleo::dists
