#pragma once

#include <string>
#include <vector>

#include "paleo/model.hpp"
#include "paleo/svi.hpp"

namespace paleo::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;   // worst observed value
    double threshold = 0.0;
    std::string detail;
    double seconds = 0.0;
};

/// Deterministic five-bin synthetic instance shared by the gradient and
/// oracle-agreement checks: grid -400..100 CE observed from 2022, default
/// priors, counts simulated from the prior mode curve with loss rate
/// 0.00065, scaling factor 25.78, sampling probability 0.01.
model::Posterior five_bin_instance();

/// Pathwise gradient vs central finite differences of the Monte Carlo ELBO
/// with common random numbers (64 samples); passes when the worst relative
/// error is <= 1e-4.
CheckResult gradient_fd_check();

/// SVI posterior means vs a tuned random-walk Metropolis chain (pilot run
/// sets proposal scales, main run keeps >= 2e5 post-burn-in samples); passes
/// when every latent satisfies |mean_svi - mean_mcmc| <= 0.5 * std_mcmc.
CheckResult svi_mcmc_check();

/// Simulation-based calibration: replicate datasets are drawn with truth
/// sampled from the priors, refit with default settings, and the central
/// 90% guide intervals are scored against the truth. Passes when the covered
/// fraction of (replicate x latent) pairs lies in [0.60, 1.00].
CheckResult coverage_check(int replicates = 20);

}  // namespace paleo::verify
