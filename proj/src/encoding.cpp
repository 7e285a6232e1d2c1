#include "qct/encoding.hpp"

#include <cmath>
#include <stdexcept>

namespace qct {

double EncodingState::window_width(std::size_t j) const {
    return (std::exp2(q_max) - 1.0) * std::exp2(-k[j]);
}

EncodingState make_encoding(std::size_t n_pixels, int q_max, double c,
                            double k0, double d0) {
    if (q_max < 1) throw std::invalid_argument("encoding: q_max must be >= 1");
    if (!(c > 0.0)) throw std::invalid_argument("encoding: c must be positive");
    EncodingState enc;
    enc.d.assign(n_pixels, d0);
    enc.k.assign(n_pixels, k0);
    enc.q_max = q_max;
    enc.c = c;
    return enc;
}

std::vector<double> decode_vector(const BitAssignment& bits, const EncodingState& enc) {
    if (bits.size() != enc.n_vars()) {
        throw std::invalid_argument("decode: bit count does not match encoding");
    }
    std::vector<double> x(enc.n_pixels());
    for (std::size_t j = 0; j < enc.n_pixels(); ++j) {
        double level = 0.0;
        for (int q = 0; q < enc.q_max; ++q) {
            if (bits[var_index(j, q, enc.q_max)]) level += std::exp2(q);
        }
        x[j] = std::exp2(-enc.k[j]) * level + enc.d[j];
    }
    return x;
}

Image decode(const BitAssignment& bits, const EncodingState& enc) {
    const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(enc.n_pixels()))));
    if (static_cast<std::size_t>(n) * n != enc.n_pixels()) {
        throw std::invalid_argument("decode: pixel count is not a square grid");
    }
    return Image(n, decode_vector(bits, enc));
}

}  // namespace qct
