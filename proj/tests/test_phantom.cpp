#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "qct/image_io.hpp"
#include "qct/phantom.hpp"

using namespace qct;

namespace {

// Independent Shepp-Logan rasterization used as the oracle: same published
// table, but evaluated by explicit rotation into each ellipse frame rather
// than via precomputed quadratic forms.
const double kTable[10][6] = {
    // intensity, a, b, x0, y0, phi_deg
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
};

double oracle_shepp_logan_at(double x, double y) {
    double value = 0.0;
    for (const double* e : kTable) {
        const double phi = e[5] * std::numbers::pi / 180.0;
        const double dx = x - e[3];
        const double dy = y - e[4];
        const double xr = std::cos(phi) * dx + std::sin(phi) * dy;
        const double yr = -std::sin(phi) * dx + std::cos(phi) * dy;
        if ((xr / e[1]) * (xr / e[1]) + (yr / e[2]) * (yr / e[2]) <= 1.0) {
            value += e[0];
        }
    }
    return std::clamp(value, 0.0, 1.0);
}

void write_test_pgm(const std::string& path, int w, int h, int maxval,
                    const std::vector<int>& samples) {
    std::ofstream out(path, std::ios::binary);
    out << "P5\n" << w << " " << h << "\n" << maxval << "\n";
    for (int s : samples) {
        if (maxval < 256) {
            out.put(static_cast<char>(s));
        } else {
            out.put(static_cast<char>(s >> 8));
            out.put(static_cast<char>(s & 0xFF));
        }
    }
}

}  // namespace

TEST_CASE("block phantom matches the published central values") {
    const Image img = make_block_phantom();
    CHECK(img.n == 4);
    CHECK(img.pixel_scale_cm == doctest::Approx(6.4));
    CHECK(img.at(1, 1) == 0.3);
    CHECK(img.at(1, 2) == 0.4);
    CHECK(img.at(2, 1) == 0.8);
    CHECK(img.at(2, 2) == 0.2);
    CHECK(img.at(0, 0) == 0.0);

    double sum = 0.0;
    for (double p : img.pixels) sum += p;
    CHECK(sum == doctest::Approx(1.7));
}

TEST_CASE("shepp-logan rejects degenerate sizes") {
    CHECK_THROWS_AS(make_shepp_logan(1), std::invalid_argument);
    CHECK_THROWS_AS(make_shepp_logan(0), std::invalid_argument);
}

TEST_CASE("shepp-logan stays within [0,1] and has empty corners") {
    for (int n : {8, 16, 24}) {
        const Image img = make_shepp_logan(n);
        for (double p : img.pixels) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
    }
    CHECK(make_shepp_logan(16).at(0, 0) == 0.0);
}

TEST_CASE("shepp-logan equals the independent ellipse-table rasterization") {
    for (int n : {8, 16, 24}) {
        const Image img = make_shepp_logan(n);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                const double x = (c + 0.5) * 2.0 / n - 1.0;
                const double y = 1.0 - (r + 0.5) * 2.0 / n;
                CHECK(img.at(r, c) == doctest::Approx(oracle_shepp_logan_at(x, y)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("phantom generators are deterministic") {
    const Image a = make_shepp_logan(16);
    const Image b = make_shepp_logan(16);
    CHECK(a.pixels == b.pixels);
    CHECK(make_block_phantom().pixels == make_block_phantom().pixels);
}

TEST_CASE("ct phantom: constant source degenerates to the zero image") {
    const std::string path = "ct_const.pgm";
    write_test_pgm(path, 8, 8, 255, std::vector<int>(64, 137));
    const Image img = make_ct_phantom(path, 4);
    for (double p : img.pixels) CHECK(p == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("ct phantom: two-level source normalizes to 0 and 1") {
    const int n = 4;
    std::vector<int> samples;
    for (int i = 0; i < 2 * n; ++i) {
        for (int j = 0; j < 2 * n; ++j) samples.push_back(i < n ? 40 : 200);
    }
    const std::string path = "ct_two_level.pgm";
    write_test_pgm(path, 2 * n, 2 * n, 255, samples);
    const Image img = make_ct_phantom(path, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            CHECK(img.at(r, c) == (r < n / 2 ? 0.0 : 1.0));
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("ct phantom: checkerboard block means are uniform before normalization") {
    // Every 2x2 block of a 48x48 checkerboard has the same mean, so the
    // downsample is constant and the degenerate rule yields all zeros.
    std::vector<int> samples;
    for (int i = 0; i < 48; ++i) {
        for (int j = 0; j < 48; ++j) samples.push_back((i + j) % 2 ? 255 : 0);
    }
    const std::string path = "ct_checker.pgm";
    write_test_pgm(path, 48, 48, 255, samples);
    const Image img = make_ct_phantom(path, 24);
    for (double p : img.pixels) CHECK(p == 0.0);
    std::remove(path.c_str());
}

TEST_CASE("ct phantom: rejects undersized and missing sources") {
    const std::string path = "ct_small.pgm";
    write_test_pgm(path, 4, 4, 255, std::vector<int>(16, 7));
    CHECK_THROWS(make_ct_phantom(path, 8));
    CHECK_THROWS(make_ct_phantom("does_not_exist.pgm", 4));
    std::remove(path.c_str());
}

TEST_CASE("ct phantom: reads 16-bit PGM input") {
    std::vector<int> samples(16 * 16);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i] = static_cast<int>(i * 257 % 65536);
    }
    const std::string path = "ct_16bit.pgm";
    write_test_pgm(path, 16, 16, 65535, samples);
    const Image img = make_ct_phantom(path, 8);
    for (double p : img.pixels) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
    std::remove(path.c_str());
}

TEST_CASE("pgm round trip preserves [0,1] images to 16-bit precision") {
    const Image img = make_shepp_logan(16);
    const std::string path = "roundtrip.pgm";
    write_pgm16(img, path);
    const GrayRaster raster = read_pgm(path);
    CHECK(raster.width == 16);
    CHECK(raster.height == 16);
    CHECK(raster.maxval == 65535);
    for (int i = 0; i < 256; ++i) {
        CHECK(raster.samples[i] / 65535.0 == doctest::Approx(img.pixels[i]).epsilon(1e-4));
    }
    std::remove(path.c_str());
}

TEST_CASE("image csv round trip is exact") {
    const Image img = make_shepp_logan(8);
    const std::string path = "roundtrip.csv";
    write_image_csv(img, path);
    const Image back = read_image_csv(path);
    CHECK(back.n == img.n);
    CHECK(back.pixels == img.pixels);
    std::remove(path.c_str());
}
