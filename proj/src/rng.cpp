#include "qct/rng.hpp"

#include <cmath>

namespace qct {

namespace {

// PTRS transformed rejection (W. Hoermann, "The transformed rejection method
// for generating Poisson random variables", 1993). Valid for mean >= 10.
std::uint64_t poisson_ptrs(double mean, Xoshiro256ss& rng) {
    const double log_mean = std::log(mean);
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform();
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) {
            return static_cast<std::uint64_t>(k);
        }
        if (k < 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            k * log_mean - mean - std::lgamma(k + 1.0)) {
            return static_cast<std::uint64_t>(k);
        }
    }
}

// Knuth product-of-uniforms inversion; expected cost mean+1 draws.
std::uint64_t poisson_knuth(double mean, Xoshiro256ss& rng) {
    const double limit = std::exp(-mean);
    double product = 1.0;
    std::uint64_t k = 0;
    do {
        ++k;
        product *= rng.uniform();
    } while (product > limit);
    return k - 1;
}

}  // namespace

std::uint64_t sample_poisson(double mean, Xoshiro256ss& rng) {
    if (!(mean > 0.0)) return 0;
    if (mean < 30.0) return poisson_knuth(mean, rng);
    return poisson_ptrs(mean, rng);
}

}  // namespace qct
