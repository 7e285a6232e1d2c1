#include "qct/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "qct/rng.hpp"

namespace qct {

Sinogram apply_noise(const Sinogram& y, const NoiseConfig& cfg) {
    if (!(cfg.i0 > 0.0)) throw std::invalid_argument("apply_noise: i0 must be positive");
    for (double v : y.values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("apply_noise: projections must be finite and nonnegative");
        }
    }

    Sinogram noisy = y;
    for (std::size_t i = 0; i < y.values.size(); ++i) {
        const double intensity = cfg.i0 * std::exp(-y.values[i]);
        Xoshiro256ss rng(derive_seed(cfg.seed, i));
        const std::uint64_t count = sample_poisson(intensity, rng);
        const double floored = count > 0 ? static_cast<double>(count) : 1.0;
        noisy.values[i] = std::log(cfg.i0 / floored);
    }
    return noisy;
}

}  // namespace qct
