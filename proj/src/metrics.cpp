#include "qct/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace qct {

double rmse(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("rmse: size mismatch");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

double rmse(const Image& a, const Image& b) {
    if (a.n != b.n) throw std::invalid_argument("rmse: image size mismatch");
    return rmse(a.pixels, b.pixels);
}

}  // namespace qct
