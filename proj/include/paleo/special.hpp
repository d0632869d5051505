#pragma once

namespace paleo::dists {

inline constexpr double kLogTwoPi = 1.8378770664093454836;  // ln(2*pi)
inline constexpr double kLogRootTwoPi = 0.9189385332046727418;

/// ln Gamma(x) for x > 0, Lanczos approximation (g = 7, 9 terms).
/// Throws std::domain_error for non-finite or non-positive arguments.
double log_gamma_fn(double x);

/// Inverse standard-normal CDF on (0, 1). Acklam's rational approximation
/// polished with one Halley step against erfc, accurate to ~1 ulp.
double normal_quantile(double q);

/// Standard-normal CDF via erfc.
double normal_cdf(double x);

double sigmoid(double z);

/// Inverse of sigmoid; p is clamped into [1e-300, 1 - 1e-16] first.
double logit(double p);

}  // namespace paleo::dists
