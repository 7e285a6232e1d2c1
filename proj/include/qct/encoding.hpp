#pragma once

#include <cstdint>
#include <vector>

#include "qct/image.hpp"

namespace qct {

/// Binary assignment over n_vars variables; variable (pixel j, bit q) lives
/// at index j * q_max + q.
using BitAssignment = std::vector<std::uint8_t>;

/// Per-pixel real-number encoding: pixel j decodes to
///   x_j = 2^(-k_j) * sum_q 2^q * sigma_{q,j} + d_j.
/// d is the window offset, 2^(-k) the quantization step; c is the exponent
/// increment applied per refinement (shared across pixels).
struct EncodingState {
    std::vector<double> d;
    std::vector<double> k;
    int q_max = 2;
    double c = 0.5;

    std::size_t n_pixels() const { return d.size(); }
    std::size_t n_vars() const { return d.size() * static_cast<std::size_t>(q_max); }

    /// Width of the representable window, (2^q_max - 1) * 2^(-k_j).
    double window_width(std::size_t j) const;
};

/// Uniform initial encoding: every pixel gets offset d0 and exponent k0.
EncodingState make_encoding(std::size_t n_pixels, int q_max, double c,
                            double k0, double d0);

inline std::size_t var_index(std::size_t pixel, int bit, int q_max) {
    return pixel * static_cast<std::size_t>(q_max) + static_cast<std::size_t>(bit);
}

/// Decodes a bit assignment into the flat pixel vector.
std::vector<double> decode_vector(const BitAssignment& bits, const EncodingState& enc);

/// Decodes into an Image; the pixel count must be a perfect square.
Image decode(const BitAssignment& bits, const EncodingState& enc);

}  // namespace qct
