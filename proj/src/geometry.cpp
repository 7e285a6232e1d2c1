#include "qct/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qct {

Vec2 Geometry::source_position(int angle_index) const {
    const double theta = angles_deg[angle_index] * std::numbers::pi / 180.0;
    const double r = source_radius_cm();
    return {-r * std::sin(theta), r * std::cos(theta)};
}

Vec2 Geometry::detector_position(int angle_index, int det) const {
    const double theta = angles_deg[angle_index] * std::numbers::pi / 180.0;
    // Detector axis is the rotated x-axis.
    const double ux = std::cos(theta);
    const double uy = std::sin(theta);
    const double s = (det - 0.5 * (n_det - 1)) * det_spacing_cm;
    return {s * ux, s * uy};
}

Geometry make_geometry(int n, int n_angles) {
    if (n < 2) throw std::invalid_argument("make_geometry: n must be >= 2");
    if (n_angles < 1) throw std::invalid_argument("make_geometry: n_angles must be >= 1");

    Geometry geom;
    geom.n = n;
    geom.n_det = 2 * n;
    geom.det_spacing_cm = 0.8 * (kObjectSideCm / n);
    geom.angles_deg.resize(n_angles);
    const double step = 360.0 / n_angles;
    for (int a = 0; a < n_angles; ++a) geom.angles_deg[a] = a * step;
    return geom;
}

}  // namespace qct
