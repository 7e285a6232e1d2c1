#pragma once

#include <cstdint>

#include "qct/sinogram.hpp"

namespace qct {

/// Poisson transmission-noise parameters: i0 is the unattenuated source
/// intensity in photons.
struct NoiseConfig {
    double i0 = 1e6;
    std::uint64_t seed = 0;
};

/// Simulates photon statistics: per ray, the detected count is drawn from
/// Poisson(i0 * exp(-y_i)) and inverted back to a line integral as
/// ln(i0 / max(k, 1)). The count floor keeps zero-photon bins finite. Each
/// detector bin uses its own RNG substream derived from (seed, bin index),
/// so output is independent of evaluation order and bit-reproducible.
Sinogram apply_noise(const Sinogram& y, const NoiseConfig& cfg);

}  // namespace qct
