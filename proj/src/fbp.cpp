#include "qct/fbp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qct {

Image fbp_reconstruct(const Geometry& geom, const Sinogram& y) {
    if (geom.n_angles() < 2) {
        throw std::invalid_argument("fbp: need at least 2 angles");
    }
    if (y.n_angles != geom.n_angles() || y.n_det != geom.n_det) {
        throw std::invalid_argument("fbp: sinogram does not match geometry");
    }

    const int n_det = geom.n_det;
    const double tau = geom.det_spacing_cm;
    const double src_r = geom.source_radius_cm();
    const double pi = std::numbers::pi;

    // Detector coordinates on the isocenter line.
    std::vector<double> s(n_det);
    for (int d = 0; d < n_det; ++d) s[d] = (d - 0.5 * (n_det - 1)) * tau;

    // Shepp-Logan convolution kernel; finite at k=0, decays as 1/k^2.
    std::vector<double> kernel(2 * n_det - 1);
    for (int k = -(n_det - 1); k <= n_det - 1; ++k) {
        kernel[k + n_det - 1] = 2.0 / (pi * pi * tau * tau * (1.0 - 4.0 * static_cast<double>(k) * k));
    }

    // Cosine-weight and filter each angular profile.
    std::vector<std::vector<double>> filtered(geom.n_angles(), std::vector<double>(n_det, 0.0));
    std::vector<double> weighted(n_det);
    for (int a = 0; a < geom.n_angles(); ++a) {
        for (int d = 0; d < n_det; ++d) {
            weighted[d] = y.at(a, d) * src_r / std::hypot(src_r, s[d]);
        }
        for (int d = 0; d < n_det; ++d) {
            double acc = 0.0;
            for (int u = 0; u < n_det; ++u) {
                acc += kernel[d - u + n_det - 1] * weighted[u];
            }
            filtered[a][d] = tau * acc;
        }
    }

    // Pixel-driven backprojection with inverse-square distance weighting.
    Image img(geom.n);
    const double half = 0.5 * geom.image_side_cm;
    const double pixel = geom.image_side_cm / geom.n;
    const double angular_step = 2.0 * pi / geom.n_angles();
    const double s_min = s.front();

    for (int a = 0; a < geom.n_angles(); ++a) {
        const double theta = geom.angles_deg[a] * pi / 180.0;
        const Vec2 src = geom.source_position(a);
        // Unit vectors: central axis from the source toward the isocenter,
        // and the detector axis.
        const double cx = std::sin(theta), cy = -std::cos(theta);
        const double ux = std::cos(theta), uy = std::sin(theta);
        const std::vector<double>& q = filtered[a];

        for (int r = 0; r < geom.n; ++r) {
            const double py = half - (r + 0.5) * pixel;
            for (int c = 0; c < geom.n; ++c) {
                const double px = -half + (c + 0.5) * pixel;
                const double vx = px - src.x;
                const double vy = py - src.y;
                const double depth = vx * cx + vy * cy;       // along the central axis
                const double lateral = vx * ux + vy * uy;
                const double s_hit = src_r * lateral / depth; // detector coordinate
                const double pos = (s_hit - s_min) / tau;
                if (pos < 0.0 || pos > n_det - 1) continue;   // outside the array
                const int lo = std::min(static_cast<int>(pos), n_det - 2);
                const double frac = pos - lo;
                const double q_interp = (1.0 - frac) * q[lo] + frac * q[lo + 1];
                img.at(r, c) += (src_r * src_r) / (depth * depth) * q_interp;
            }
        }
    }

    const double scale = 0.5 * angular_step;  // 1/2 for full-scan redundancy
    for (double& p : img.pixels) p *= scale;
    return img;
}

}  // namespace qct
