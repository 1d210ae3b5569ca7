#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace collabmetrics {

// SplitMix64. Chosen over <random> engines + distributions because the
// standard distributions are implementation-defined: the same seed must
// reproduce the same corpus byte for byte.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe as a log() argument.
    double next_open() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// Independent sub-stream seed for (seed, index); collaborations drawing
/// from their own sub-stream keeps generation order-free.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 m(seed ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
    m.next_u64();
    return m.next_u64();
}

/// Box-Muller normal draw.
inline double draw_normal(SplitMix64& rng, double mu, double sigma) {
    const double u1 = rng.next_open();
    const double u2 = rng.next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mu + sigma * r * std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
}

/// Poisson draw: multiplicative inversion for small means, Hormann's PTRS
/// transformed rejection for large ones.
inline std::int64_t draw_poisson(SplitMix64& rng, double lambda) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("draw_poisson: lambda must be >= 0");
    if (lambda == 0.0) return 0;
    if (lambda < 10.0) {
        const double limit = std::exp(-lambda);
        std::int64_t k = 0;
        double prod = 1.0;
        do {
            ++k;
            prod *= rng.next_double();
        } while (prod > limit);
        return k - 1;
    }
    const double slam = std::sqrt(lambda);
    const double loglam = std::log(lambda);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.next_double() - 0.5;
        const double v = rng.next_double();
        const double us = 0.5 - std::fabs(u);
        const auto k = static_cast<std::int64_t>(std::floor((2.0 * a / us + b) * u + lambda + 0.43));
        if (us >= 0.07 && v <= vr) return k;
        if (k < 0 || (us < 0.013 && v > us)) continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            -lambda + static_cast<double>(k) * loglam - std::lgamma(static_cast<double>(k) + 1.0)) {
            return k;
        }
    }
}

} // namespace collabmetrics
