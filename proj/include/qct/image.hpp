#pragma once

#include <cstddef>
#include <vector>

namespace qct {

/// Physical side length of every reconstructed object, in cm.
inline constexpr double kObjectSideCm = 25.6;

/// Square grid of line-attenuation coefficients. Row 0 is the top of the
/// image; pixels are stored row-major. pixel_scale_cm is the physical side
/// of one pixel, always kObjectSideCm / n.
struct Image {
    int n = 0;
    std::vector<double> pixels;
    double pixel_scale_cm = 0.0;

    Image() = default;
    explicit Image(int side);
    Image(int side, std::vector<double> values);

    double& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * n + col]; }
    double at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * n + col]; }

    std::size_t size() const { return pixels.size(); }
};

}  // namespace qct
