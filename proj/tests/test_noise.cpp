#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qct/noise.hpp"
#include "qct/rng.hpp"

using namespace qct;

namespace {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
};

Moments sample_moments(double intensity, int draws, std::uint64_t seed) {
    Xoshiro256ss rng(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
        const auto k = static_cast<double>(sample_poisson(intensity, rng));
        sum += k;
        sum_sq += k * k;
    }
    const double mean = sum / draws;
    return {mean, sum_sq / draws - mean * mean};
}

}  // namespace

TEST_CASE("poisson mean and variance, knuth branch") {
    const double intensity = 25.0;  // below the PTRS threshold
    const Moments m = sample_moments(intensity, 10000, 3);
    CHECK(std::fabs(m.mean - intensity) <= 4.0 * std::sqrt(intensity / 10000.0));
    CHECK(m.variance >= 0.9 * intensity);
    CHECK(m.variance <= 1.1 * intensity);
}

TEST_CASE("poisson mean and variance, ptrs branch") {
    for (double intensity : {100.0, 1e4, 1e6}) {
        const Moments m = sample_moments(intensity, 10000, 11);
        CHECK(std::fabs(m.mean - intensity) <= 4.0 * std::sqrt(intensity / 10000.0));
        CHECK(m.variance >= 0.9 * intensity);
        CHECK(m.variance <= 1.1 * intensity);
    }
}

TEST_CASE("unattenuated bin draws counts around i0") {
    // y = 0, i0 = 1e6: the sampled intensity averages i0.
    const Moments m = sample_moments(1e6, 10000, 21);
    CHECK(std::fabs(m.mean - 1e6) <= 4.0 * std::sqrt(1e6 / 10000.0));
}

TEST_CASE("noise vanishes in the high-intensity limit") {
    Sinogram y(1, 6);
    y.values = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
    const Sinogram noisy = apply_noise(y, {1e12, 5});
    for (std::size_t i = 0; i < y.size(); ++i) {
        CHECK(std::fabs(noisy.values[i] - y.values[i]) <= 1e-3);
    }
}

TEST_CASE("zero-count bins are floored to one photon") {
    // y = 20 at i0 = 10: the expected count is ~2e-8, so the draw is 0 and
    // the inversion returns ln(10).
    Sinogram y(1, 1);
    y.values = {20.0};
    const Sinogram noisy = apply_noise(y, {10.0, 1});
    CHECK(noisy.values[0] == doctest::Approx(std::log(10.0)).epsilon(1e-12));
}

TEST_CASE("fixed seed reproduces bit-identically") {
    Sinogram y(2, 4);
    for (std::size_t i = 0; i < y.size(); ++i) y.values[i] = 0.3 * static_cast<double>(i);
    const Sinogram a = apply_noise(y, {1e4, 123});
    const Sinogram b = apply_noise(y, {1e4, 123});
    CHECK(a.values == b.values);
    const Sinogram c = apply_noise(y, {1e4, 124});
    CHECK(a.values != c.values);
}

TEST_CASE("inferred projection decreases as the count grows") {
    // y' = ln(i0 / max(k,1)) is monotone nonincreasing in k.
    const double i0 = 1e4;
    double prev = std::numeric_limits<double>::infinity();
    for (std::uint64_t k = 0; k < 40; k += 4) {
        const double floored = k > 0 ? static_cast<double>(k) : 1.0;
        const double inferred = std::log(i0 / floored);
        CHECK(inferred <= prev);
        prev = inferred;
    }
}

TEST_CASE("apply_noise validates inputs") {
    Sinogram y(1, 2);
    y.values = {0.5, -0.1};
    CHECK_THROWS_AS(apply_noise(y, {1e4, 0}), std::invalid_argument);
    y.values = {0.5, 0.1};
    CHECK_THROWS_AS(apply_noise(y, {0.0, 0}), std::invalid_argument);
}
