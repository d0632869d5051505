#include "paleo/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace paleo::infer {

std::vector<double> adam_step(AdamState& state, std::span<const double> grads,
                              std::span<const double> params) {
    if (grads.size() != state.m.size() || params.size() != state.m.size()) {
        throw std::invalid_argument("adam_step: dimension mismatch");
    }
    const auto& c = state.config;
    ++state.step;
    double bc1 = 1.0 - std::pow(c.beta1, static_cast<double>(state.step));
    double bc2 = 1.0 - std::pow(c.beta2, static_cast<double>(state.step));
    std::vector<double> out(params.begin(), params.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        double g = grads[i];
        state.m[i] = c.beta1 * state.m[i] + (1.0 - c.beta1) * g;
        state.v[i] = c.beta2 * state.v[i] + (1.0 - c.beta2) * g * g;
        double mhat = state.m[i] / bc1;
        double vhat = state.v[i] / bc2;
        out[i] += c.learning_rate * mhat / (std::sqrt(vhat) + c.epsilon);
    }
    return out;
}

}  // namespace paleo::infer
