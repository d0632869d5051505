#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace paleo::infer {

struct AdamConfig {
    double learning_rate = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// First/second moment accumulators plus the step counter.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::int64_t step = 0;
    AdamConfig config;

    explicit AdamState(std::size_t dim, AdamConfig cfg = {})
        : m(dim, 0.0), v(dim, 0.0), config(cfg) {}
};

/// One bias-corrected Adam update, ascending the objective (the optimizer
/// maximizes the ELBO throughout this project). Returns the new parameter
/// vector and advances the state.
std::vector<double> adam_step(AdamState& state, std::span<const double> grads,
                              std::span<const double> params);

}  // namespace paleo::infer
