#pragma once

#include <cmath>
#include <cstdint>

namespace paleo::dists {

// Counter-based generator: every output is a hash of (seed, counter), so a
// state value fully determines the remaining sequence and disjoint streams
// can be handed to parallel workers without coordination.
struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t counter = 0;

    explicit RngState(std::uint64_t seed_ = 0, std::uint64_t counter_ = 0)
        : seed(seed_), counter(counter_) {}

    // splitmix64 finalizer.
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ULL;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t next_u64() {
        constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
        return mix(seed + kGolden * ++counter);
    }

    /// Uniform draw in the open interval (0, 1).
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    /// Standard-normal draw (Box-Muller, cosine branch); consumes two counters.
    double next_normal() {
        double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;  // (0, 1]
        double u2 = static_cast<double>(next_u64() >> 11) * 0x1p-53;          // [0, 1)
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    /// Derived state with a seed unique to (this->seed, id); counter reset.
    RngState stream(std::uint64_t id) const {
        return RngState(mix(seed ^ mix(id + 0x9e3779b97f4a7c15ULL)));
    }

    friend bool operator==(const RngState&, const RngState&) = default;
};

/// Poisson draw by Knuth's product-of-uniforms method, split into chunks of
/// rate <= 60 so exp(-chunk) stays comfortably inside double range.
inline long long sample_poisson(RngState& rng, double rate) {
    long long k = 0;
    while (rate > 0.0) {
        double chunk = rate < 60.0 ? rate : 60.0;
        rate -= chunk;
        double limit = std::exp(-chunk);
        double prod = rng.next_uniform();
        while (prod > limit) {
            prod *= rng.next_uniform();
            ++k;
        }
    }
    return k;
}

/// Gamma draw, Marsaglia-Tsang squeeze method (shape < 1 via the boost
/// x * U^(1/shape) identity).
inline double sample_gamma(RngState& rng, double shape, double rate) {
    if (shape < 1.0) {
        double u = rng.next_uniform();
        return sample_gamma(rng, shape + 1.0, rate) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = rng.next_normal();
        double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        double v = t * t * t;
        double u = rng.next_uniform();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
            return d * v / rate;
        }
    }
}

inline double sample_beta(RngState& rng, double alpha, double beta) {
    double x = sample_gamma(rng, alpha, 1.0);
    double y = sample_gamma(rng, beta, 1.0);
    return x / (x + y);
}

}  // namespace paleo::dists
