#pragma once

#include <cstdint>
#include <stdexcept>

#include "paleo/special.hpp"

namespace paleo::dists {

// Priors are specified throughout by (mode, std); shape/rate and alpha/beta
// are internal representations produced by the conversions below.

struct GammaParams {
    double shape = 1.0;  // > 0
    double rate = 1.0;   // > 0

    double mode() const { return shape > 1.0 ? (shape - 1.0) / rate : 0.0; }
    double mean() const { return shape / rate; }
    double stddev() const;
};

struct BetaParams {
    double alpha = 1.0;  // > 0
    double beta = 1.0;   // > 0

    double mode() const { return (alpha - 1.0) / (alpha + beta - 2.0); }
    double mean() const { return alpha / (alpha + beta); }
    double variance() const;
};

struct LogNormalParams {
    double location = 0.0;  // log-space
    double scale = 1.0;     // log-space, > 0
};

class InfeasibleParameterization : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Gamma with the requested mode and standard deviation (mode, std > 0).
/// Closed form: rate = (mode + sqrt(mode^2 + 4 std^2)) / (2 std^2),
/// shape = 1 + mode * rate; the result always has shape > 1.
GammaParams gamma_from_mode_std(double mode, double std);

/// Beta with interior mode (0 < mode < 1) and standard deviation, solved by
/// bisection on c = alpha + beta - 2 with alpha = 1 + mode * c. Throws
/// InfeasibleParameterization when no solution with alpha, beta > 1 exists
/// in c within [1e-6, 1e6] (std too large for the requested mode).
BetaParams beta_from_mode_std(double mode, double std);

// Log-densities return -infinity outside the support (not an error).
double log_pdf_gamma(double x, const GammaParams& params);
double log_pdf_beta(double x, const BetaParams& params);
double log_pdf_lognormal(double x, const LogNormalParams& params);

/// Poisson log-pmf; throws std::domain_error for k < 0 or rate <= 0.
double log_pmf_poisson(long long k, double rate);

/// Reparameterized positive draw x = exp(location + scale * eps). The
/// exponent is clamped into [-kMaxExpArg, kMaxExpArg]; clamping bumps a
/// process-wide counter.
double transform_positive(double eps, const LogNormalParams& params);
inline constexpr double kMaxExpArg = 700.0;

/// Reparameterized (0,1) draw sigmoid(location + scale * eps), clamped into
/// [1e-12, 1 - 1e-12].
double transform_unit_interval(double eps, double location, double scale);
inline constexpr double kUnitClamp = 1e-12;

std::uint64_t transform_clamp_count();
void reset_transform_clamp_count();

// Quantiles used by reporting.
double lognormal_quantile(const LogNormalParams& params, double q);
double logit_normal_quantile(double location, double scale, double q);

}  // namespace paleo::dists
