#include "qct/phantom.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qct/image_io.hpp"

namespace qct {

namespace {

struct Ellipse {
    double intensity;
    double a, b;      // semi-axes, unit square coordinates
    double x0, y0;    // center
    double phi_deg;   // rotation of the a-axis, counterclockwise
};

// Classical Shepp-Logan parameter set (Shepp & Logan 1974).
constexpr std::array<Ellipse, 10> kSheppLogan = {{
    {1.00, 0.6900, 0.9200, 0.00, 0.0000, 0.0},
    {-0.98, 0.6624, 0.8740, 0.00, -0.0184, 0.0},
    {-0.02, 0.1100, 0.3100, 0.22, 0.0000, -18.0},
    {-0.02, 0.1600, 0.4100, -0.22, 0.0000, 18.0},
    {0.01, 0.2100, 0.2500, 0.00, 0.3500, 0.0},
    {0.01, 0.0460, 0.0460, 0.00, 0.1000, 0.0},
    {0.01, 0.0460, 0.0460, 0.00, -0.1000, 0.0},
    {0.01, 0.0460, 0.0230, -0.08, -0.6050, 0.0},
    {0.01, 0.0230, 0.0230, 0.00, -0.6060, 0.0},
    {0.01, 0.0230, 0.0460, 0.06, -0.6050, 0.0},
}};

// Quadratic form of an ellipse: point (dx,dy) relative to the center is
// inside iff m00*dx^2 + 2*m01*dx*dy + m11*dy^2 <= 1.
struct EllipseForm {
    double m00, m01, m11;
    double x0, y0;
    double intensity;
};

std::array<EllipseForm, kSheppLogan.size()> shepp_logan_forms() {
    std::array<EllipseForm, kSheppLogan.size()> forms{};
    for (std::size_t i = 0; i < kSheppLogan.size(); ++i) {
        const Ellipse& e = kSheppLogan[i];
        const double phi = e.phi_deg * std::numbers::pi / 180.0;
        const double ct = std::cos(phi);
        const double st = std::sin(phi);
        const double ia2 = 1.0 / (e.a * e.a);
        const double ib2 = 1.0 / (e.b * e.b);
        forms[i] = {ct * ct * ia2 + st * st * ib2,
                    ct * st * (ia2 - ib2),
                    st * st * ia2 + ct * ct * ib2,
                    e.x0,
                    e.y0,
                    e.intensity};
    }
    return forms;
}

}  // namespace

Image make_block_phantom() {
    Image img(4);
    img.at(1, 1) = 0.3;
    img.at(1, 2) = 0.4;
    img.at(2, 1) = 0.8;
    img.at(2, 2) = 0.2;
    return img;
}

Image make_shepp_logan(int n) {
    if (n < 2) throw std::invalid_argument("make_shepp_logan: n must be >= 2");
    static const auto forms = shepp_logan_forms();

    Image img(n);
    for (int r = 0; r < n; ++r) {
        // Pixel centers in the unit square, y up.
        const double y = 1.0 - (r + 0.5) * 2.0 / n;
        for (int c = 0; c < n; ++c) {
            const double x = (c + 0.5) * 2.0 / n - 1.0;
            double value = 0.0;
            for (const EllipseForm& f : forms) {
                const double dx = x - f.x0;
                const double dy = y - f.y0;
                const double q =
                    f.m00 * dx * dx + 2.0 * f.m01 * dx * dy + f.m11 * dy * dy;
                if (q <= 1.0) value += f.intensity;
            }
            img.at(r, c) = std::clamp(value, 0.0, 1.0);
        }
    }
    return img;
}

Image make_ct_phantom(const std::string& source_path, int n) {
    if (n < 1) throw std::invalid_argument("make_ct_phantom: n must be positive");
    const GrayRaster raster = read_pgm(source_path);
    if (raster.height < n || raster.width < n) {
        throw std::invalid_argument("make_ct_phantom: source smaller than target grid");
    }

    // Block mean: input pixel (i,j) contributes to output bucket
    // (floor(i*n/H), floor(j*n/W)).
    Image img(n);
    std::vector<double> counts(img.size(), 0.0);
    for (int i = 0; i < raster.height; ++i) {
        const int r = static_cast<int>(static_cast<long long>(i) * n / raster.height);
        for (int j = 0; j < raster.width; ++j) {
            const int c = static_cast<int>(static_cast<long long>(j) * n / raster.width);
            img.at(r, c) += raster.samples[static_cast<std::size_t>(i) * raster.width + j];
            counts[static_cast<std::size_t>(r) * n + c] += 1.0;
        }
    }
    for (std::size_t k = 0; k < img.size(); ++k) img.pixels[k] /= counts[k];

    const auto [mn_it, mx_it] = std::minmax_element(img.pixels.begin(), img.pixels.end());
    const double mn = *mn_it;
    const double range = *mx_it - mn;
    if (range <= 0.0) {
        std::fill(img.pixels.begin(), img.pixels.end(), 0.0);
        return img;
    }
    for (double& p : img.pixels) p = (p - mn) / range;
    return img;
}

Image make_disk_phantom(int n, double radius_fraction, double value) {
    if (n < 1) throw std::invalid_argument("make_disk_phantom: n must be positive");
    Image img(n);
    const double radius = radius_fraction;  // unit-square half-side = 1
    for (int r = 0; r < n; ++r) {
        const double y = 1.0 - (r + 0.5) * 2.0 / n;
        for (int c = 0; c < n; ++c) {
            const double x = (c + 0.5) * 2.0 / n - 1.0;
            if (x * x + y * y <= radius * radius) img.at(r, c) = value;
        }
    }
    return img;
}

}  // namespace qct
