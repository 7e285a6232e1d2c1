#pragma once

#include <string>

#include "qct/image.hpp"

namespace qct {

/// 4x4 test object: central 2x2 block reads 0.3, 0.4 / 0.8, 0.2 row by row,
/// zero elsewhere.
Image make_block_phantom();

/// Shepp-Logan head phantom rasterized at n x n by evaluating the classical
/// published ellipse table at pixel centers, clamped to [0, 1]. No
/// anti-aliasing: a pixel takes the exact ellipse sum at its center.
/// Throws for n < 2.
Image make_shepp_logan(int n);

/// Ingests a grayscale PGM (binary P5, 8- or 16-bit), block-mean downsamples
/// to n x n and affinely normalizes to [0, 1]. A constant source degenerates
/// to the all-zero image. Throws if the raster is smaller than n in either
/// dimension.
Image make_ct_phantom(const std::string& source_path, int n);

/// Centered disk of the given value; radius_fraction is relative to the
/// image half-side. Used as a rotation-symmetric test object.
Image make_disk_phantom(int n, double radius_fraction, double value);

}  // namespace qct
