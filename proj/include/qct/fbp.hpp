#pragma once

#include "qct/geometry.hpp"
#include "qct/image.hpp"
#include "qct/sinogram.hpp"

namespace qct {

/// Fan-beam filtered back projection for the equispaced flat detector of
/// this geometry: per-angle cosine weighting of the detector samples,
/// space-domain convolution with the Shepp-Logan kernel
///   h[k] = 2 / (pi^2 * tau^2 * (1 - 4k^2)),
/// then distance-weighted pixel-driven backprojection with linear detector
/// interpolation, scaled by the angular step with a global 1/2 redundancy
/// factor for the full 360-degree scan. Throws for fewer than 2 angles.
Image fbp_reconstruct(const Geometry& geom, const Sinogram& y);

}  // namespace qct
